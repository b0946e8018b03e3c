//! Acceptance suite: runs the nine acceptance criteria with exact comparisons and prints one
//! pass/fail line per criterion. Exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rmf_core::brackets::{framework_check, recursion_pairs, verify_lemma41, verify_recursion};
use rmf_core::cartan::{cartan_datum, AffineType, CartanDatum, Family};
use rmf_core::exact::{int, q_pow, qs_pow, signed_qs, Field, Matrix, Poly, Scalar, SpectralFn};
use rmf_core::fusion::{fundamental_rep, verify_dorey, DoreyRegime};
use rmf_core::modules::{check_relations, Label};
use rmf_core::rmatrix::{denominator, is_minimal, normalized_r_matrix, restrict_to_hw, spectral_r_1n, DenomPoly};
use rmf_core::verify::{compare_with_r_matrix, double_pole_predicate, table_pairs, Report};

type Outcome = Result<String, String>;

const R11_TYPES: [(Family, usize); 5] =
    [(Family::A2odd, 3), (Family::A2even, 2), (Family::B1, 3), (Family::D2, 2), (Family::D2, 3)];

const GRID_TYPES: [(Family, usize); 4] = [(Family::A2odd, 3), (Family::A2even, 2), (Family::B1, 3), (Family::D2, 3)];

fn datum(f: Family, n: usize) -> Arc<CartanDatum> {
    Arc::new(cartan_datum(AffineType::new(f, n).unwrap()).unwrap())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn t_of(f: Family) -> usize {
    if f == Family::D2 {
        2
    } else {
        1
    }
}

/// `(-q^t)^a`.
fn neg_qt(t: usize, a: i64) -> Scalar {
    signed_qs(2 * a, 2 * t as i64 * a)
}

/// `p*` by type.
fn p_star(f: Family, n: usize) -> Scalar {
    let n = n as i64;
    match f {
        Family::A2odd => neg_qt(1, 2 * n).neg(),
        Family::A2even => neg_qt(1, 2 * n + 1),
        Family::B1 => neg_qt(1, 2 * n - 1).neg(),
        Family::D2 => neg_qt(2, n).neg(),
        _ => unreachable!(),
    }
}

/// `z^t - c`.
fn zt_minus(t: usize, c: Scalar) -> Poly<Scalar> {
    let mut coeffs = vec![Scalar::zero(); t + 1];
    coeffs[0] = c.neg();
    coeffs[t] = Scalar::one();
    Poly::new(coeffs)
}

fn product(factors: impl IntoIterator<Item = Poly<Scalar>>) -> Poly<Scalar> {
    factors.into_iter().fold(Poly::one(), |acc, p| acc.mul(&p))
}

/// The denominator `d_{k,l}(z)` as stated by the main theorem and its spin counterparts.
fn oracle_denominator(f: Family, n: usize, k: usize, l: usize) -> Poly<Scalar> {
    let t = t_of(f);
    let theta = usize::from(matches!(f, Family::B1 | Family::D2));
    let (ni, ki, li) = (n as i64, k as i64, l as i64);
    if k <= n - theta && l <= n - theta {
        let ps = p_star(f, n).powi(t as i64);
        return product((1..=ki.min(li)).flat_map(|s| {
            [
                zt_minus(t, neg_qt(t, (ki - li).abs() + 2 * s)),
                zt_minus(t, ps.mul(&neg_qt(t, 2 * s - ki - li))),
            ]
        }));
    }
    let j = ki.min(li);
    match (f, k == l) {
        (Family::B1, false) => product((1..=j).map(|s| {
            let sign = int(if (ni + j) % 2 == 0 { 1 } else { -1 });
            zt_minus(1, sign.mul(&qs_pow(2 * ni - 2 * j - 1 + 4 * s)))
        })),
        (Family::B1, true) => product((1..=ni).map(|s| zt_minus(1, qs_pow(4 * s - 2)))),
        (Family::D2, false) => product((1..=j).map(|s| zt_minus(2, neg_qt(2, ni - j + 2 * s).neg()))),
        (Family::D2, true) => product((1..=ni).map(|s| zt_minus(1, neg_qt(2, s).neg()))),
        _ => unreachable!(),
    }
}

fn spectral(num: Poly<Scalar>, den: Poly<Scalar>) -> SpectralFn {
    SpectralFn::new(num, den).unwrap()
}

/// `f(z^k)`.
fn in_power(p: &Poly<Scalar>, k: usize) -> Poly<Scalar> {
    let mut coeffs = vec![Scalar::zero(); (p.coeffs().len().max(1) - 1) * k + 1];
    for (i, c) in p.coeffs().iter().enumerate() {
        coeffs[i * k] = c.clone();
    }
    Poly::new(coeffs)
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for (f, n) in R11_TYPES {
        let d = datum(f, n);
        let r = normalized_r_matrix(&d, 1, 1).map_err(|e| format!("{f:?} n={n}: {e}"))?;
        let t = t_of(f);
        // The A2even solver works in the e_0 twist s with z = s^2.
        let power = if f == Family::A2even { 2 } else { 1 };
        let q2t = q_pow(2 * t as i64);
        let den = in_power(&zt_minus(t, q2t.clone()), power);
        let swap = spectral(in_power(&zt_minus(t, Scalar::one()).scale(&q_pow(t as i64)), power), den.clone());
        for a in 1..=n {
            for b in 1..=n {
                if a == b {
                    continue;
                }
                let ia = r.left.index_of(&Label::Pos(a)).unwrap();
                let ib = r.left.index_of(&Label::Pos(b)).unwrap();
                let z_pow = if a > b { t * power } else { 0 };
                let diagonal = spectral(Poly::monomial(Scalar::one().sub(&q2t), z_pow), den.clone());
                let expected: BTreeMap<(usize, usize), SpectralFn> =
                    [((ia, ib), diagonal), ((ib, ia), swap.clone())].into_iter().collect();
                let got: BTreeMap<(usize, usize), SpectralFn> =
                    r.image(ia, ib).into_iter().map(|(c, e, v)| ((c, e), v)).collect();
                ensure(got == expected, || format!("{f:?} n={n}: image of v_{a} ⊗ v_{b} is {got:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs v_k ⊗ v_l with k != l in 1..=n match across 5 instances"))
}

fn criterion_2() -> Outcome {
    for (f, n) in R11_TYPES {
        let d = datum(f, n);
        let r = normalized_r_matrix(&d, 1, 1).map_err(|e| e.to_string())?;
        let t = t_of(f);
        let expected = zt_minus(t, q_pow(2 * t as i64)).mul(&zt_minus(t, p_star(f, n).powi(t as i64)));
        let got = denominator(&r).map_err(|e| e.to_string())?;
        ensure(got.poly == expected, || format!("{f:?} n={n}: d_11 = {}", got.expanded_string()))?;
    }
    Ok("d_11 = (z^t - q^2t)(z^t - p*^t) for all 5 instances".into())
}

/// The 2×2 matrix of `R^norm_{1,n}` on the highest weight vectors of weight `ϖ_n` for `D2`.
fn d2_matrix(n: usize) -> Matrix<SpectralFn> {
    let ni = n as i64;
    let sign = int(if n % 2 == 0 { 1 } else { -1 });
    let den = zt_minus(2, neg_qt(2, ni + 1).neg());
    let z2 = |c0: Scalar, c2: Scalar| Poly::new(vec![c0, Scalar::zero(), c2]);
    let z1 = |c: Scalar| Poly::monomial(c, 1);
    let a11 = z2(sign.mul(&q_pow(2 * ni + 1)).neg(), q_pow(1));
    let a12 = z1(sign.mul(&q_pow(-2 * ni - 1).sub(&q_pow(2 * ni + 1))));
    let a21 = z1(Scalar::one().sub(&q_pow(2)));
    let a22 = z2(sign.mul(&q_pow(-2 * ni)).neg(), Scalar::one());
    let e = |p| spectral(p, den.clone());
    Matrix::from_rows(vec![vec![e(a11), e(a12)], vec![e(a21), e(a22)]], 2)
}

fn criterion_3() -> Outcome {
    for n in [2, 3] {
        let d = datum(Family::D2, n);
        let s = spectral_r_1n(&d).map_err(|e| e.to_string())?;
        let expected = d2_matrix(n);
        ensure(s.matrix == expected, || format!("n={n}: matrix {:?}", s.matrix))?;
        let d1n = zt_minus(2, neg_qt(2, n as i64 + 1).neg());
        ensure(s.denominator.poly == d1n, || format!("n={n}: d_1n = {}", s.denominator.expanded_string()))?;
        let r = normalized_r_matrix(&d, 1, n).map_err(|e| e.to_string())?;
        let block = restrict_to_hw(&r, &s).map_err(|e| e.to_string())?;
        ensure(block == expected, || format!("n={n}: blockwise solver disagrees"))?;
        let solved = denominator(&r).map_err(|e| e.to_string())?;
        ensure(solved.poly == d1n, || format!("n={n}: blockwise d_1n = {}", solved.expanded_string()))?;
    }
    Ok("2×2 matrix and d_1n = z^2 + (-q^2)^(n+1) for n = 2, 3, agreeing with the blockwise solver".into())
}

fn criterion_4() -> Outcome {
    let d = datum(Family::B1, 3);
    let r = normalized_r_matrix(&d, 1, 3).map_err(|e| e.to_string())?;
    let got = denominator(&r).map_err(|e| e.to_string())?;
    ensure(got.poly == zt_minus(1, qs_pow(7)), || format!("d_13 = {}", got.expanded_string()))?;
    Ok(format!("d_13 = {}", got.expanded_string()))
}

struct Cell {
    ty: AffineType,
    k: usize,
    l: usize,
    report: Report,
    hom_dim: usize,
    minimal: bool,
}

fn compute_grid() -> Result<Vec<Cell>, String> {
    let mut cells = Vec::new();
    for (f, n) in GRID_TYPES {
        let d = datum(f, n);
        let ty = d.ty;
        for (k, l) in table_pairs(ty) {
            let (report, r) = compare_with_r_matrix(ty, k, l, true).map_err(|e| format!("{ty} ({k},{l}): {e}"))?;
            let minimal = is_minimal(&r, &report.computed).map_err(|e| e.to_string())?;
            cells.push(Cell { ty, k, l, hom_dim: r.hom_dim(), minimal, report });
        }
    }
    Ok(cells)
}

fn criterion_5(grid: &[Cell]) -> Outcome {
    for c in grid {
        let r = &c.report;
        ensure(r.equal, || format!("{} ({},{}): computed {}", c.ty, c.k, c.l, r.computed.expanded_string()))?;
        ensure(r.modular_agrees == Some(true), || format!("{} ({},{}): modular pre-check failed", c.ty, c.k, c.l))?;
        let oracle = oracle_denominator(c.ty.family, c.ty.n, c.k, c.l);
        ensure(r.computed.poly == oracle, || format!("{} ({},{}): differs from the theorem", c.ty, c.k, c.l))?;
    }
    let ms: u128 = grid.iter().map(|c| c.report.timing_ms).sum();
    Ok(format!("{} cells over 4 types, modular pre-check on, {:.1} s of solving", grid.len(), ms as f64 / 1000.0))
}

fn cell<'a>(grid: &'a [Cell], f: Family, k: usize, l: usize) -> Result<&'a Cell, String> {
    grid.iter().find(|c| c.ty.family == f && c.k == k && c.l == l).ok_or_else(|| format!("no cell {f:?} ({k},{l})"))
}

fn criterion_6(grid: &[Cell]) -> Outcome {
    let c = cell(grid, Family::D2, 2, 2)?;
    let computed: &DenomPoly = &c.report.computed;
    for root in [q_pow(4), q_pow(4).neg()] {
        let m = computed.multiplicity(&root);
        ensure(m == 2, || format!("D2 n=3 (2,2): multiplicity {m} at {root}"))?;
    }
    let predicted = double_pole_predicate(c.ty, 2, 2).map_err(|e| e.to_string())?;
    ensure(predicted == vec![4], || format!("predicate gives {predicted:?}"))?;
    for c in grid.iter().filter(|c| c.ty.family == Family::B1) {
        ensure(c.report.computed.factors.iter().all(|(_, m)| *m == 1), || {
            format!("B1 ({},{}): {}", c.k, c.l, c.report.computed.factored_string())
        })?;
    }
    Ok("D2 n=3 d_22 has double poles at ±q^4, predicate {4}; B1 n=3 poles are simple".into())
}

fn criterion_7() -> Outcome {
    let mut cases: Vec<(Family, usize, DoreyRegime)> = Vec::new();
    for (f, n) in GRID_TYPES {
        let d = datum(f, n);
        for i in 1..n {
            for j in 1..n {
                if i + j <= n - d.theta {
                    cases.push((f, n, DoreyRegime::Classical(i, j)));
                }
            }
        }
    }
    cases.push((Family::D2, 2, DoreyRegime::Spin(1)));
    cases.push((Family::D2, 3, DoreyRegime::Spin(1)));
    cases.push((Family::D2, 3, DoreyRegime::Spin(2)));
    cases.push((Family::A2even, 2, DoreyRegime::A2even1nn));
    cases.push((Family::D2, 3, DoreyRegime::SpinPair(1, 2)));
    cases.push((Family::D2, 3, DoreyRegime::SpinPair(2, 1)));
    let mut coefficients = 0;
    for (f, n, regime) in &cases {
        let report = verify_dorey(&datum(*f, *n), *regime).map_err(|e| format!("{f:?} n={n} {regime}: {e}"))?;
        ensure(report.pass(), || format!("{f:?} n={n}: {report}"))?;
        coefficients += report.compared;
    }
    Ok(format!("{} morphism families, {coefficients} coefficients matched up to one unit per map", cases.len()))
}

fn criterion_8() -> Outcome {
    let mut count = 0;
    for (f, n) in GRID_TYPES {
        let d = datum(f, n);
        let mut verdicts = Vec::new();
        for (k, l) in recursion_pairs(&d) {
            verdicts.push(verify_recursion(&d, k, l));
        }
        for (k, l) in [(1, 1), (1, 2), (2, 2)] {
            verdicts.push(verify_lemma41(&d, k, l));
        }
        for l in 2..=n - d.theta {
            verdicts.push(framework_check(&d, l));
        }
        for v in verdicts {
            let v = v.map_err(|e| format!("{f:?} n={n}: {e}"))?;
            ensure(v.pass, || format!("{f:?} n={n}: {}", v.detail))?;
            count += 1;
        }
    }
    Ok(format!("{count} recursion, product and framework identities hold up to units"))
}

fn criterion_9(grid: &[Cell]) -> Outcome {
    let mut modules = 0;
    let mut seen = Vec::new();
    for (f, n) in R11_TYPES.iter().chain(&GRID_TYPES) {
        if seen.contains(&(*f, *n)) {
            continue;
        }
        seen.push((*f, *n));
        let d = datum(*f, *n);
        for k in 1..=*n {
            let v = fundamental_rep(&d, k).map_err(|e| e.to_string())?;
            let bad = check_relations(&v);
            ensure(bad.is_empty(), || format!("{f:?} n={n} V(ϖ_{k}): {bad:?}"))?;
            modules += 1;
        }
    }
    for c in grid {
        let at = || format!("{} ({},{})", c.ty, c.k, c.l);
        ensure(c.hom_dim == 1, || format!("{}: hom dimension {}", at(), c.hom_dim))?;
        ensure(c.minimal, || format!("{}: denominator is not minimal", at()))?;
        let mirror = cell(grid, c.ty.family, c.l, c.k)?;
        ensure(mirror.report.computed == c.report.computed, || format!("{}: d_kl != d_lk", at()))?;
    }
    Ok(format!("{modules} modules satisfy the relations; {} R-matrices are Schur, symmetric and minimal", grid.len()))
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panic".into())
}

fn run<T>(f: impl FnOnce() -> Result<T, String>) -> Result<T, String> {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| Err(panic_message(p)))
}

fn report(i: usize, started: Instant, outcome: Outcome) -> bool {
    let secs = started.elapsed().as_secs_f64();
    match outcome {
        Ok(msg) => {
            println!("criterion {i}: PASS ({secs:.1} s) {msg}");
            true
        }
        Err(msg) => {
            println!("criterion {i}: FAIL ({secs:.1} s) {msg}");
            false
        }
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut all = true;
    for (i, f) in [(1, criterion_1 as fn() -> Outcome), (2, criterion_2), (3, criterion_3), (4, criterion_4)] {
        all &= report(i, Instant::now(), run(f));
    }
    let t = Instant::now();
    let grid = run(compute_grid);
    let on_grid = |f: fn(&[Cell]) -> Outcome| match &grid {
        Ok(g) => run(|| f(g)),
        Err(e) => Err(format!("grid computation failed: {e}")),
    };
    all &= report(5, t, on_grid(criterion_5));
    all &= report(6, Instant::now(), on_grid(criterion_6));
    all &= report(7, Instant::now(), run(criterion_7));
    all &= report(8, Instant::now(), run(criterion_8));
    all &= report(9, Instant::now(), on_grid(criterion_9));
    println!("acceptance: {} in {:.1} s", if all { "all criteria pass" } else { "FAILED" }, start.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
