use crate::cartan::{AffineType, Family};
use crate::error::{Error, Result};
use crate::exact::signed_qs;
use crate::rmatrix::DenomPoly;

/// A root `i^k q_s^m` stored as `(k, m)`.
type Root = (i64, i64);

/// `(-q)^a`.
fn neg_q(a: i64) -> Root {
    (2 * a, 2 * a)
}

/// `-(-q)^a`.
fn minus_neg_q(a: i64) -> Root {
    (2 * a + 2, 2 * a)
}

/// `(-q_s)^a`.
fn neg_qs(a: i64) -> Root {
    (2 * a, a)
}

/// `(-q^2)^a`.
fn neg_q2(a: i64) -> Root {
    (2 * a, 4 * a)
}

/// Both square roots of `i^k q_s^m`, when they are again of that form.
fn square_roots((k, m): Root) -> Result<[Root; 2]> {
    if k.rem_euclid(2) != 0 || m.rem_euclid(2) != 0 {
        return Err(Error::NotSignedMonomial(format!("no square root of i^{k} q_s^{m} in Q(i)(q_s)")));
    }
    Ok([(k / 2, m / 2), (k / 2 + 2, m / 2)])
}

fn negate((k, m): Root) -> Root {
    (k + 2, m)
}

fn check_range(ty: AffineType, k: usize, l: usize) -> Result<()> {
    let n = ty.n;
    if k == 0 || l == 0 || k > n || l > n {
        return Err(Error::IndexOutOfRange(format!("(k, l) = ({k}, {l}) is outside 1..={n} for {ty}")));
    }
    Ok(())
}

/// The closed-form denominator `d_{k,l}(z)` from the denominator table, for all seven types.
pub fn closed_form_denominator(ty: AffineType, k: usize, l: usize) -> Result<DenomPoly> {
    check_range(ty, k, l)?;
    let n = ty.n as i64;
    let (k, l) = (k as i64, l as i64);
    let d = (k - l).abs();
    let lo = k.min(l);
    let mut roots: Vec<Root> = Vec::new();
    match ty.family {
        Family::A1 => {
            for s in 1..=lo.min(n + 1 - k).min(n + 1 - l) {
                roots.push(neg_q(2 * s + d));
            }
        }
        Family::B1 => {
            if k < n && l < n {
                for s in 1..=lo {
                    roots.push(neg_q(d + 2 * s));
                    roots.push(minus_neg_q(2 * n - k - l - 1 + 2 * s));
                }
            } else if k == n && l == n {
                for s in 1..=n {
                    roots.push((0, 4 * s - 2));
                }
            } else {
                let j = lo;
                let sign = if (n + j) % 2 == 0 { 0 } else { 2 };
                for s in 1..=j {
                    roots.push((sign, 2 * n - 2 * j - 1 + 4 * s));
                }
            }
        }
        Family::C1 => {
            for s in 1..=lo.min(n - k).min(n - l) {
                roots.push(neg_qs(d + 2 * s));
            }
            for s in 1..=lo {
                roots.push(neg_qs(2 * n + 2 - k - l + 2 * s));
            }
        }
        Family::D1 => {
            let spin = |x: i64| x >= n - 1;
            if !spin(k) && !spin(l) {
                for s in 1..=lo {
                    roots.push(neg_q(d + 2 * s));
                    roots.push(neg_q(2 * n - 2 - k - l + 2 * s));
                }
            } else if spin(k) && spin(l) {
                if k == l {
                    for s in 1..=n / 2 {
                        roots.push(neg_q(4 * s - 2));
                    }
                } else {
                    for s in 1..=(n - 1) / 2 {
                        roots.push(neg_q(4 * s));
                    }
                }
            } else {
                let j = lo;
                for s in 1..=j {
                    roots.push(neg_q(n - j - 1 + 2 * s));
                }
            }
        }
        Family::A2odd => {
            for s in 1..=lo {
                roots.push(neg_q(d + 2 * s));
                roots.push(minus_neg_q(2 * n - k - l + 2 * s));
            }
        }
        Family::A2even => {
            for s in 1..=lo {
                roots.push(neg_q(d + 2 * s));
                roots.push(neg_q(2 * n + 1 - k - l + 2 * s));
            }
        }
        Family::D2 => {
            if k < n && l < n {
                for s in 1..=lo {
                    roots.extend(square_roots(neg_q2(d + 2 * s))?);
                    roots.extend(square_roots(neg_q2(2 * n - k - l + 2 * s))?);
                }
            } else if k == n && l == n {
                for s in 1..=n {
                    roots.push(negate(neg_q2(s)));
                }
            } else {
                let j = lo;
                for s in 1..=j {
                    roots.extend(square_roots(negate(neg_q2(n - j + 2 * s)))?);
                }
            }
        }
    }
    Ok(DenomPoly::from_roots(roots.into_iter().map(|(i, m)| (signed_qs(i, m), 1))))
}

/// Every valid `(k, l)` of the table for a type, in lexicographic order.
pub fn table_pairs(ty: AffineType) -> Vec<(usize, usize)> {
    let n = ty.n;
    (1..=n).flat_map(|k| (1..=n).map(move |l| (k, l))).collect()
}
