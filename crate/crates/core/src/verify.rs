//! Seeded verification suites. Each suite returns exact records; a record
//! passes when `expected == actual`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::charfield::{self, LieTorusModel, TorusCharacter};
use crate::error::{Error, Result};
use crate::linalg::{fmt_q, frac, Q};
use crate::parabolic::{enumerate_standard, StandardParabolic};
use crate::polyhedra::{project_polyhedron, PolyhedronContext};
use crate::quasipoly::{brute_sum, fit_lattice_sum, product_eval, LatticeSpec};
use crate::rootdata::{fold, AVector, RootDatum, WeylGroup};
use crate::truncation::{LatticeScan, TruncationContext};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub suite: String,
    pub case: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl ReportRecord {
    pub fn new(suite: &str, case: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>) -> Self {
        let (expected, actual) = (expected.into(), actual.into());
        ReportRecord { suite: suite.into(), case: case.into(), pass: expected == actual, expected, actual }
    }
}

/// Sample sizes; the defaults are the acceptance sizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Samples {
    pub vectors: usize,
    pub polyhedra: usize,
    pub foldings: usize,
    pub lattice_points: usize,
    pub held_out: usize,
}

impl Default for Samples {
    fn default() -> Self {
        Samples { vectors: 1000, polyhedra: 1000, foldings: 100, lattice_points: 50, held_out: 20 }
    }
}

pub const SUITES: [&str; 8] = ["inversion", "gamma", "refinement", "indicator", "folding", "qpsum", "slltrace", "filter"];

pub const INVERSION_TYPES: [&str; 6] = ["A1", "A1xA1", "A2", "B2", "G2", "A3"];
pub const REFINEMENT_TYPES: [&str; 4] = ["A1", "A2", "B2", "A3"];
pub const QPSUM_TYPES: [&str; 3] = ["A1", "A2", "B2"];
pub const SLLTRACE_CASES: [(u64, u64); 5] = [(3, 2), (5, 2), (2, 3), (4, 3), (2, 5)];

fn tally(suite: &str, case: String, total: usize, failures: &[String]) -> ReportRecord {
    let actual = match failures.first() {
        None => format!("{total}/{total}"),
        Some(f) => format!("{}/{total} (first failure: {f})", total - failures.len()),
    };
    ReportRecord::new(suite, case, format!("{total}/{total}"), actual)
}

/// A random rational vector with semisimple coordinates in (−span, span).
pub fn random_vector<R: Rng>(rng: &mut R, d: &RootDatum, span: i64) -> AVector {
    let den = 997;
    let mut v = AVector::zeros(d.dim());
    for x in v.0.iter_mut() {
        *x = frac(rng.gen_range(-span * den + 1..span * den), den);
    }
    v
}

/// Langlands inversion on every standard pair P ⊆ Q for `n` wall-free H.
pub fn suite_inversion(ty: &str, seed: u64, n: usize) -> Result<Vec<ReportRecord>> {
    let ctx = TruncationContext::new(RootDatum::new(ty, 0)?);
    let d = ctx.datum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stds = enumerate_standard(d);
    let mut failures = vec![];
    let mut done = 0;
    while done < n {
        let h = random_vector(&mut rng, d, 5);
        let mut wall = false;
        let mut bad = vec![];
        'pairs: for p in &stds {
            for q in stds.iter().filter(|q| p.is_subset(q)) {
                match ctx.langlands_inversion_check(p, q, &h) {
                    Ok(true) => {}
                    Ok(false) => bad.push(format!("P={p} Q={q} H={h}")),
                    Err(Error::OnWall(_)) => {
                        wall = true;
                        break 'pairs;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        if !wall {
            failures.extend(bad);
            done += 1;
        }
    }
    let pairs = stds.iter().map(|p| stds.iter().filter(|q| p.is_subset(q)).count()).sum::<usize>();
    Ok(vec![tally("inversion", format!("{ty}: {pairs} pairs x {n} H"), n * pairs, &failures)])
}

/// Vanishing at X = 0, Γ_G ≡ 1, and support-box doubling for lattice sums.
pub fn suite_gamma(ty: &str, seed: u64, n: usize) -> Result<Vec<ReportRecord>> {
    let ctx = TruncationContext::new(RootDatum::new(ty, 0)?);
    let d = ctx.datum();
    let g = ctx.full();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stds = enumerate_standard(d);
    let zero = AVector::zeros(d.dim());
    let mut vanish = vec![];
    let mut unit = vec![];
    for _ in 0..n {
        let h = random_vector(&mut rng, d, 5);
        let x = random_vector(&mut rng, d, 5);
        for p in stds.iter().filter(|p| **p != g) {
            let v = ctx.gamma(p, &h, &zero)?;
            if v != 0 {
                vanish.push(format!("Γ_{p}({h}, 0) = {v}"));
            }
        }
        let v = ctx.gamma(&g, &h, &x)?;
        if v != 1 {
            unit.push(format!("Γ_G({h}, {x}) = {v}"));
        }
    }
    let mut out = vec![
        tally("gamma", format!("{ty}: Γ_P(H,0) = 0"), n * (stds.len() - 1), &vanish),
        tally("gamma", format!("{ty}: Γ_G = 1"), n, &unit),
    ];
    if d.rank_ss() <= 2 {
        let mut doubling = vec![];
        let mut count = 0;
        for p in stds.iter().filter(|p| **p != g) {
            for spec in [LatticeSpec::coroot(&ctx, *p)?, LatticeSpec::coweight(&ctx, *p)?] {
                for _ in 0..5 {
                    let xi: Vec<i64> = (0..d.rank_ss()).map(|_| rng.gen_range(-6..=6)).collect();
                    let x = AVector::from_ints(&xi);
                    let sb = ctx.gamma_support_box(p, &x, &spec.basis, &spec.offset)?;
                    let cg = ctx.compile_gamma(p, &spec.basis, &spec.offset, &x)?;
                    let scan = LatticeScan::new(&sb.coords, &spec.basis, &spec.offset)?;
                    let r2 = &sb.radius * Q::from_integer(2.into());
                    let (a1, s1) = scan.abs_sum(&cg, &sb.radius);
                    let (a2, s2) = scan.abs_sum(&cg, &r2);
                    count += 1;
                    if !sb.certified || a1 != a2 || s1 != s2 {
                        doubling.push(format!("P={p} X={x}: {s1} vs {s2}"));
                    }
                }
            }
        }
        out.push(tally("gamma", format!("{ty}: support box doubling"), count, &doubling));
    }
    Ok(out)
}

/// Canonical refinement existence, uniqueness and chamber independence
/// of degrees over `n` seeded polyhedra; also the semistability indicator.
pub fn suite_refinement(ty: &str, seed: u64, n: usize) -> Result<Vec<ReportRecord>> {
    let c = PolyhedronContext::new(RootDatum::new(ty, 0)?)?;
    let g = c.trunc.full();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut refine_fail = vec![];
    let mut degree_fail = vec![];
    let mut indicator_fail = vec![];
    let mut semistable = 0;
    let stds = enumerate_standard(c.datum());
    for i in 0..n {
        let cp = c.random_polyhedron(&mut rng);
        if let Some(v) = cp.validate(c.datum(), &c.weyl)? {
            refine_fail.push(format!("instance {i}: invalid polyhedron at {v:?}"));
            continue;
        }
        for q in &stds {
            match c.canonical_refinement(&cp, q) {
                Ok(r) => {
                    if q == &g && r.parabolic.std == g {
                        semistable += 1;
                    }
                    if q == &g {
                        let ind = c.semistability_indicator(&cp)?;
                        let want = (r.parabolic.std == g) as i64;
                        if ind != want {
                            indicator_fail.push(format!("instance {i}: indicator {ind}, refinement {}", r.parabolic.describe(&c.weyl)));
                        }
                    }
                }
                Err(e) => refine_fail.push(format!("instance {i} Q={q}: {}", e)),
            }
            for p in c.candidates(q) {
                let ds = c.degree_all_chambers(&cp, &p, q)?;
                if ds.iter().any(|x| *x != ds[0]) {
                    degree_fail.push(format!("instance {i}: degree of {} depends on the chamber", p.describe(&c.weyl)));
                }
            }
        }
    }
    let mut out = vec![
        tally("refinement", format!("{ty}: unique refinement, both clauses ({} Q each)", stds.len()), n * stds.len(), &refine_fail),
        tally("refinement", format!("{ty}: degree chamber independence"), n, &degree_fail),
    ];
    out.push(tally("indicator", format!("{ty}: indicator = [refinement = G] ({semistable} semistable)"), n, &indicator_fail));
    Ok(out)
}

/// (type, σ, order, folded label, distinct coefficients).
pub const FOLDINGS: [(&str, &[usize], usize, &str, &str); 2] =
    [("A3", &[2, 1, 0], 2, "C2", "1/2, 1"), ("D4", &[2, 1, 3, 0], 3, "G2", "1/3, 1")];

/// Foldings A3 → C2 and D4 → G2 and projection of seeded polyhedra.
pub fn suite_folding(seed: u64, n: usize) -> Result<Vec<ReportRecord>> {
    let mut out = vec![];
    for (ty, sigma, ord, label, coeffs) in FOLDINGS {
        let c = PolyhedronContext::new(RootDatum::new(ty, 0)?)?;
        let f = fold(c.datum(), sigma, ord)?;
        let structure = match f.check(c.datum()) {
            Ok(()) => format!("{} valid, c in (0,1]: {}", f.folded.label(), f.coefficient_range_ok()),
            Err(e) => e.to_string(),
        };
        out.push(ReportRecord::new("folding", format!("{ty} -> {label}: folded datum"), format!("{label} valid, c in (0,1]: true"), structure));
        out.push(ReportRecord::new(
            "folding",
            format!("{ty} -> {label}: coefficients"),
            coeffs,
            f.distinct_coefficients().iter().map(fmt_q).collect::<Vec<_>>().join(", "),
        ));
        let small = WeylGroup::new(&f.folded)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failures = vec![];
        for i in 0..n {
            let cp = c.random_polyhedron(&mut rng);
            let pr = project_polyhedron(&cp, &f, &c.weyl, &small)?;
            if let Some(v) = pr.validate(&f.folded, &small)? {
                failures.push(format!("instance {i}: {v:?}"));
            }
        }
        out.push(tally("folding", format!("{ty} -> {label}: projected polyhedra"), n, &failures));
    }
    Ok(out)
}

/// Borel and the maximal-intermediate standard parabolics.
pub fn qpsum_parabolics(d: &RootDatum) -> Vec<StandardParabolic> {
    let full = d.full_mask();
    let mut v = vec![StandardParabolic::borel()];
    if d.rank_ss() >= 2 {
        v.extend((0..d.rank_ss()).map(|i| StandardParabolic { mask: 1 << i }).filter(|p| p.mask != full));
    }
    v
}

/// product_eval = brute_sum on lattice points X for q ∈ {2,3,4,5}, and a
/// fitted quasi-polynomial predicting held-out values (A2 Borel).
pub fn suite_qpsum(ty: &str, seed: u64, n: usize, held_out: usize) -> Result<Vec<ReportRecord>> {
    let ctx = TruncationContext::new(RootDatum::new(ty, 0)?);
    let d = ctx.datum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![];
    for p in qpsum_parabolics(d) {
        for (lname, spec) in [("coroot", LatticeSpec::coroot(&ctx, p)?), ("coweight", LatticeSpec::coweight(&ctx, p)?)] {
            let mut failures = vec![];
            for _ in 0..n {
                let xi: Vec<i64> = (0..d.rank_ss()).map(|_| rng.gen_range(-8..=8)).collect();
                let x = AVector::from_ints(&xi);
                let b = brute_sum(&ctx, &spec, &x)?;
                for q in [2, 3, 4, 5] {
                    match product_eval(&ctx, &spec, &x, q) {
                        Ok(v) if v == b => {}
                        Ok(v) => failures.push(format!("X={x} q={q}: product {} brute {}", fmt_q(&v), fmt_q(&b))),
                        Err(e) => failures.push(format!("X={x} q={q}: {e}")),
                    }
                }
            }
            out.push(tally("qpsum", format!("{ty} P={p} {lname}: product = brute, q in 2..5"), 4 * n, &failures));
        }
    }
    if ty == "A2" || ty == "A1" {
        let spec = LatticeSpec::coroot(&ctx, StandardParabolic::borel())?;
        let (case, actual) = match fit_lattice_sum(&ctx, &spec, held_out, seed) {
            Ok(fit) => {
                let neg = fit.held_out.iter().filter(|(x, _)| x.iter().any(|&v| v < 0)).count();
                let ok = fit.held_out.iter().filter(|(x, v)| fit.quasi.evaluate_rational(x).ok().as_ref() == Some(v)).count();
                let case = format!("{ty} Borel coroot: fit, period {}, {neg} held-out points with negative coordinates", fit.quasi.period);
                (case, format!("{ok}/{}", fit.held_out.len()))
            }
            Err(e) => (format!("{ty} Borel coroot: fit"), e.to_string()),
        };
        out.push(ReportRecord::new("qpsum", case, format!("{held_out}/{held_out}"), actual));
    }
    Ok(out)
}

/// The elliptic SL_l sweep over all general-position pairs with the
/// central condition.
pub fn suite_slltrace(q: u64, l: u64) -> Result<Vec<ReportRecord>> {
    let t = charfield::build_torus(q, l)?;
    let case = |s: &str| format!("(q,l)=({q},{l}): {s}");
    let mut out = vec![ReportRecord::new(
        "slltrace",
        case("torus order"),
        format!("m={} z={}", (q.pow(l as u32) - 1) / (q - 1), num_integer::gcd(l, q - 1)),
        format!("m={} z={}", t.m, t.z),
    )];
    let gp: Vec<TorusCharacter> = t.characters().filter(|c| charfield::general_position(*c, &t)).collect();
    let mut closed = vec![];
    let mut jfail = vec![];
    let mut direct = vec![];
    let mut central = vec![];
    let mut pairs = 0;
    for a in &gp {
        for b in &gp {
            if charfield::central_character_ok(*a, *b, &t) != charfield::central_character_direct(*a, *b, &t) {
                central.push(format!("({},{})", a.k, b.k));
            }
            if !charfield::central_character_ok(*a, *b, &t) {
                continue;
            }
            pairs += 1;
            let contra = charfield::contragredient_test(*a, *b, &t)?;
            let s = charfield::char_sum_regular(*a, *b, &t)?;
            if s != charfield::closed_form_char_sum(contra, &t) {
                closed.push(format!("({},{}): {s}", a.k, b.k));
            }
            if s != charfield::char_sum_regular_direct(*a, *b, &t)? {
                direct.push(format!("({},{})", a.k, b.k));
            }
            match charfield::assemble_j(*a, *b, &t) {
                Ok(j) if j == Q::from_integer((contra as i64).into()) => {}
                Ok(j) => jfail.push(format!("({},{}): J={}", a.k, b.k, fmt_q(&j))),
                Err(e) => jfail.push(format!("({},{}): {e}", a.k, b.k)),
            }
        }
    }
    let all = gp.len() * gp.len();
    out.push(tally("slltrace", case("central shortcut = restriction"), all, &central));
    out.push(tally("slltrace", case("char sum = closed form"), pairs, &closed));
    out.push(tally("slltrace", case("histogram sum = direct sum"), pairs, &direct));
    out.push(tally("slltrace", case("J = [contragredient]"), pairs, &jfail));

    let lie = LieTorusModel::new(q, l)?;
    let target = charfield::j_nilp_closed_form(&t);
    let adm = lie.admissible_pairs();
    let actual = if adm.is_empty() {
        format!("no admissible additive pair: |t - 0| = {}, {} regular Frobenius orbit(s)", lie.size() - 1, (lie.size() - 1) as u64 / l)
    } else {
        let mut vals: Vec<Q> = vec![];
        for (x, y) in &adm {
            vals.push(lie.j_nilp(lie.lie_char_sum(*x, *y)?));
        }
        vals.sort();
        vals.dedup();
        format!("J_nilp = {} over {} pairs", vals.iter().map(fmt_q).collect::<Vec<_>>().join(", "), adm.len())
    };
    let expected = if adm.is_empty() {
        format!("J_nilp = {} from an admissible pair", fmt_q(&target))
    } else {
        format!("J_nilp = {} over {} pairs", fmt_q(&target), adm.len())
    };
    out.push(ReportRecord::new("slltrace", case("J_nilp from additive sums"), expected, actual));
    Ok(out)
}

/// SL_2 Levi-centre check against θ_μ ≠ θ_λ^{±1}.
pub fn suite_filter() -> Result<Vec<ReportRecord>> {
    let mut out = vec![];
    for q in [3u64, 5, 7] {
        let mut failures = vec![];
        for a in 0..q - 1 {
            for b in 0..q - 1 {
                let got = charfield::cuspidal_filter_check("SL2", q, &[a], &[b])?;
                if got != charfield::sl2_condition(q, a, b) {
                    failures.push(format!("({a},{b})"));
                }
            }
        }
        out.push(tally("filter", format!("SL2 q={q}: Levi check = (θ_μ ≠ θ_λ^±1)"), ((q - 1) * (q - 1)) as usize, &failures));
    }
    Ok(out)
}

/// Runs one suite (or "all"); `ty` restricts type-indexed suites.
pub fn run_suite(suite: &str, ty: Option<&str>, seed: u64, samples: &Samples) -> Result<Vec<ReportRecord>> {
    let pick = |list: &[&'static str]| -> Vec<String> {
        match ty {
            Some(t) => vec![t.to_string()],
            None => list.iter().map(|s| s.to_string()).collect(),
        }
    };
    let mut out = vec![];
    match suite {
        "all" => {
            for s in SUITES {
                if s != "indicator" {
                    out.extend(run_suite(s, ty, seed, samples)?);
                }
            }
        }
        "inversion" => {
            for t in pick(&INVERSION_TYPES) {
                out.extend(suite_inversion(&t, seed, samples.vectors)?);
            }
        }
        "gamma" => {
            for t in pick(&INVERSION_TYPES) {
                out.extend(suite_gamma(&t, seed, samples.vectors)?);
            }
        }
        "refinement" | "indicator" => {
            for t in pick(&REFINEMENT_TYPES) {
                out.extend(suite_refinement(&t, seed, samples.polyhedra)?);
            }
        }
        "folding" => out.extend(suite_folding(seed, samples.foldings)?),
        "qpsum" => {
            for t in pick(&QPSUM_TYPES) {
                out.extend(suite_qpsum(&t, seed, samples.lattice_points, samples.held_out)?);
            }
        }
        "slltrace" => {
            for (q, l) in SLLTRACE_CASES {
                out.extend(suite_slltrace(q, l)?);
            }
        }
        "filter" => out.extend(suite_filter()?),
        other => return Err(Error::Parse(format!("unknown suite {other}; expected one of {} or all", SUITES.join(", ")))),
    }
    Ok(out)
}

/// Wall-clock of a closure, for the runtime budgets.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}
