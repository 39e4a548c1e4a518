//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one PASS/FAIL line.

mod common;

use common::*;
use holant::classes::in_a;
use holant::classifier::{
    check_csp, check_cspd_neq, check_delta0, check_eo, check_holantc_conditions, check_pc, check_single_weighted, replay_verdict, CaseCert, Outcome,
    Status, Verdict,
};
use holant::constructions::{
    entanglement_class, extract_delta_power, ghz_normal_form, ghz_normal_form_script, nonvanishing_witness, odd_arity_route, reduce_arity_gap,
    selfloop_reduce, Entanglement, GadgetScript, RouteStep, Step,
};
use holant::factor::{is_irreducible, upf};
use holant::grid::{
    encode_csp_as_holant, encode_eo_as_holant, eval_csp, eval_eo, eval_holant, random_bipartite_grid, random_grid, Clause, CspInstance, GridParams,
};
use holant::literal::format_scalar;
use holant::scalar::Scalar;
use holant::signature::{weight, Signature};
use holant::sigset::SigSet;
use holant::transforms::{apply_holographic, apply_slocc, hat, unhat, Mat2, Side};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Check = fn() -> Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn main() {
    let criteria: [(&str, u64, Check); 11] = [
        ("holographic invariance", 60, holographic_invariance),
        ("K algebra", 60, k_algebra),
        ("gadget calculus vs grid oracle", 30, gadget_oracle),
        ("unique prime factorization", 60, factorization),
        ("affine membership vs generator oracle", 120, affine_oracle),
        ("vanishing dichotomy", 120, vanishing),
        ("construction replay", 60, construction_replay),
        ("GHZ/W discriminant", 30, ghz_w),
        ("embedding equivalences", 60, embeddings),
        ("classifier golden suite", 60, golden_suite),
        ("orthogonal stability", 60, orthogonal_stability),
    ];
    let mut failed = 0;
    for (k, (name, limit, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let dt = t.elapsed();
        let res = res.and_then(|_| {
            ensure(dt <= Duration::from_secs(*limit), || {
                format!("took {:.1}s, limit {}s", dt.as_secs_f64(), limit)
            })
        });
        match res {
            Ok(()) => println!("criterion {:>2} {:<40} PASS  {:>7.2}s (limit {}s)", k + 1, name, dt.as_secs_f64(), limit),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} {:<40} FAIL  {:>7.2}s: {}", k + 1, name, dt.as_secs_f64(), e);
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn holographic_invariance() -> Result<(), String> {
    let mut r = rng(1);
    for case in 0..200 {
        let left = r.gen_range(1..=3);
        let right = r.gen_range(1..=6 - left);
        let g = random_bipartite_grid(r.gen(), left, right, 8, 4);
        let t = invertible(&mut r);
        let tinv = t.inv().unwrap();
        let mut orig = SigSet::new(holant::Field::Cyclo24);
        let mut moved = SigSet::new(holant::Field::Cyclo24);
        for v in &g.vertices {
            let f = sig(&mut r, v.ends.len(), 0.3);
            let image = if v.sig.starts_with('L') {
                apply_holographic(&tinv, &f, Side::Row)
            } else {
                apply_holographic(&t, &f, Side::Column)
            };
            orig.insert(v.sig.clone(), f);
            moved.insert(v.sig.clone(), image);
        }
        let (a, b) = (eval_holant(&g, &orig).unwrap(), eval_holant(&g, &moved).unwrap());
        ensure(a == b, || format!("case {}: {} != {}", case, format_scalar(&a), format_scalar(&b)))?;
    }
    Ok(())
}

fn k_algebra() -> Result<(), String> {
    ensure(apply_holographic(&Mat2::k(), &Signature::eq(2), Side::Row) == Signature::neq2(), || {
        "(=2)K != (!=2)".into()
    })?;
    ensure(hat(&Signature::delta0()).is_multiple_of(&Signature::from_ints(&[1, 1])), || {
        "hat(Delta0) not prop. to [1,1]".into()
    })?;
    let f = Signature::unary(Scalar::one(), Scalar::i());
    ensure(hat(&f).is_multiple_of(&Signature::delta0()), || "hat([1,i]) not prop. to Delta0".into())?;
    let mut r = rng(2);
    for _ in 0..20 {
        let q = nonzero(&mut r);
        let d = Mat2::diag(q.inv().unwrap(), q.clone());
        ensure(apply_holographic(&d, &Signature::neq2(), Side::Row) == Signature::neq2(), || {
            format!("diag(1/q,q) moved !=2 for q={}", format_scalar(&q))
        })?;
    }
    Ok(())
}

fn random_script(r: &mut R) -> GadgetScript {
    let start = {
        let a = r.gen_range(1..=3);
        nonzero_sig(r, a, 0.2)
    };
    let mut s = GadgetScript::new("random", ("s", &start));
    s.with_input("eq2", &Signature::eq(2));
    s.with_input("neq2", &Signature::neq2());
    s.with_input("b", &nonzero_sig(r, 2, 0.2));
    let mut arity = start.arity();
    for k in 0..r.gen_range(1..=5) {
        match r.gen_range(0..5) {
            0 if arity <= 5 => {
                let name = format!("t{}", k);
                let g = {
                    let a = r.gen_range(1..=2);
                    nonzero_sig(r, a, 0.2)
                };
                arity += g.arity();
                s.with_input(&name, &g);
                s.steps.push(Step::Tensor { input: name });
            }
            1 if arity >= 1 => {
                s.steps.push(Step::Pin {
                    var: r.gen_range(0..arity),
                    bit: r.gen_range(0..2),
                });
                arity -= 1;
            }
            2 if arity >= 2 => {
                let i = r.gen_range(0..arity - 1);
                let j = r.gen_range(i + 1..arity);
                let b = ["eq2", "neq2", "b"].choose(r).unwrap().to_string();
                s.steps.push(Step::SelfLoop { i, j, b });
                arity -= 2;
            }
            3 if arity >= 1 => {
                let name = format!("c{}", k);
                let g = {
                    let a = r.gen_range(1..=3);
                    nonzero_sig(r, a, 0.2)
                };
                let m = r.gen_range(1..=arity.min(g.arity()));
                let ps = permutation(r, arity);
                let qs = permutation(r, g.arity());
                let pairs: Vec<(usize, usize)> = (0..m).map(|t| (ps[t], qs[t])).collect();
                arity = arity + g.arity() - 2 * m;
                s.with_input(&name, &g);
                s.steps.push(Step::Compose { input: name, pairs });
            }
            4 => {
                let side = if r.gen_bool(0.5) { Side::Column } else { Side::Row };
                s.steps.push(Step::Transform { matrix: invertible(r), side });
            }
            _ => {}
        }
    }
    s.claimed = s.replay().expect("well-formed script");
    s
}

fn gadget_oracle() -> Result<(), String> {
    let mut r = rng(3);
    for case in 0..500 {
        let s = random_script(&mut r);
        let grid = s.replay_grid().map_err(|e| format!("case {}: {}", case, e))?;
        ensure(grid == s.claimed, || format!("case {}: grid realization differs for {:?}", case, s.steps))?;
    }
    Ok(())
}

fn irreducible(r: &mut R, n: usize) -> Signature {
    loop {
        let f = nonzero_sig(r, n, 0.15);
        if is_irreducible(&f).unwrap() {
            return f;
        }
    }
}

fn block_set(blocks: Vec<Vec<usize>>) -> BTreeSet<Vec<usize>> {
    blocks
        .into_iter()
        .map(|mut b| {
            b.sort();
            b
        })
        .collect()
}

fn factorization() -> Result<(), String> {
    let mut r = rng(4);
    for case in 0..500 {
        let mut parts = Vec::new();
        let mut total = 0;
        loop {
            let a = r.gen_range(1..=4);
            if total + a > 10 || (parts.len() >= 2 && r.gen_bool(0.3)) {
                break;
            }
            parts.push(irreducible(&mut r, a));
            total += a;
        }
        let mut f = Signature::constant(nonzero(&mut r));
        let mut blocks = Vec::new();
        for p in &parts {
            blocks.push((f.arity()..f.arity() + p.arity()).collect::<Vec<_>>());
            f = f.tensor_fresh(p).unwrap();
        }
        let pi = permutation(&mut r, total);
        let f = f.permute_vars(&pi).unwrap();
        let expect = block_set(blocks.iter().map(|b| b.iter().map(|&j| pi[j]).collect()).collect());
        let fz = upf(&f).unwrap();
        ensure(fz.reconstruct() == f.clone().relabeled(), || {
            format!("case {}: reconstruction differs", case)
        })?;
        ensure(fz.factors.len() == parts.len(), || {
            format!("case {}: {} factors, expected {}", case, fz.factors.len(), parts.len())
        })?;
        ensure(block_set(fz.blocks()) == expect, || {
            format!("case {}: blocks {:?}, expected {:?}", case, fz.blocks(), expect)
        })?;
        let sigma = permutation(&mut r, total);
        let moved = upf(&f.permute_vars(&sigma).unwrap()).unwrap();
        let mapped = block_set(fz.blocks().iter().map(|b| b.iter().map(|&j| sigma[j]).collect()).collect());
        ensure(block_set(moved.blocks()) == mapped, || {
            format!("case {}: blocks not permutation-stable", case)
        })?;
    }
    Ok(())
}

/// Independent description of the affine class: `lambda * chi_S * i^Q` with
/// `S` an affine subspace and `Q` a sum of affine Boolean functions.
struct AffineOracle {
    n: usize,
    subspaces: Vec<Vec<usize>>,
    phases: Vec<Vec<u8>>,
    normalized: HashSet<Vec<String>>,
}

impl AffineOracle {
    fn new(n: usize) -> AffineOracle {
        let size = 1usize << n;
        let subspaces: Vec<Vec<usize>> = (1u32..1 << size)
            .map(|mask| (0..size).filter(|&x| mask >> x & 1 == 1).collect::<Vec<_>>())
            .filter(|s| s.iter().all(|&x| s.iter().all(|&y| s.iter().all(|&z| s.contains(&(x ^ y ^ z))))))
            .collect();
        let forms: Vec<Vec<u8>> = (0..2usize << n)
            .map(|c| (0..size).map(|x| (((c >> 1) & x).count_ones() as usize + (c & 1)) as u8 % 2).collect())
            .collect();
        let mut phases: HashSet<Vec<u8>> = HashSet::new();
        let mut todo = vec![vec![0u8; size]];
        while let Some(q) = todo.pop() {
            if !phases.insert(q.clone()) {
                continue;
            }
            for l in &forms {
                let next: Vec<u8> = q.iter().zip(l).map(|(a, b)| (a + b) % 4).collect();
                if !phases.contains(&next) {
                    todo.push(next);
                }
            }
        }
        let mut phases: Vec<Vec<u8>> = phases.into_iter().collect();
        phases.sort();
        let mut o = AffineOracle {
            n,
            subspaces,
            phases,
            normalized: HashSet::new(),
        };
        for s in o.subspaces.clone() {
            for q in o.phases.clone() {
                let f = o.build(&s, &q, &Scalar::one());
                o.normalized.insert(Self::key(&f));
            }
        }
        o
    }

    fn build(&self, s: &[usize], q: &[u8], lambda: &Scalar) -> Signature {
        let base = q[s[0]];
        let table = (0..1usize << self.n)
            .map(|x| {
                if s.contains(&x) {
                    lambda * &Scalar::i_pow(((4 + q[x] - base) % 4) as i64)
                } else {
                    Scalar::zero()
                }
            })
            .collect();
        Signature::from_table(table).unwrap()
    }

    fn key(f: &Signature) -> Vec<String> {
        f.table().iter().map(format_scalar).collect()
    }

    fn member(&self, f: &Signature) -> bool {
        match f.first_nonzero() {
            None => true,
            Some((_, lam)) => {
                let inv = lam.inv().unwrap();
                self.normalized.contains(&Self::key(&f.scale(&inv)))
            }
        }
    }
}

fn affine_oracle() -> Result<(), String> {
    let vals = gauss9();
    for n in 0..=2usize {
        let oracle = AffineOracle::new(n);
        let size = 1usize << n;
        let mut checked = 0;
        for code in 0..vals.len().pow(size as u32) {
            let mut c = code;
            let table = (0..size)
                .map(|_| {
                    let v = vals[c % vals.len()].clone();
                    c /= vals.len();
                    v
                })
                .collect();
            let f = Signature::from_table(table).unwrap();
            let (want, got) = (oracle.member(&f), in_a(&f).member);
            ensure(want == got, || {
                format!("arity {} table {:?}: oracle {} vs in_a {}", n, AffineOracle::key(&f), want, got)
            })?;
            checked += 1;
        }
        if n == 2 {
            ensure(checked == 6561, || format!("{} arity-2 cases", checked))?;
        }
    }
    let oracle = AffineOracle::new(3);
    let mut r = rng(5);
    let mut perturbed = 0;
    for case in 0..100_000 {
        let s = oracle.subspaces.choose(&mut r).unwrap();
        let q = oracle.phases.choose(&mut r).unwrap();
        let f = oracle.build(s, q, &nonzero(&mut r));
        ensure(in_a(&f).member, || {
            format!("generated member {} rejected: {:?}", case, AffineOracle::key(&f))
        })?;
        if case % 10 == 0 {
            let mut t = f.table().to_vec();
            if s.len() >= 2 {
                let x = *s.choose(&mut r).unwrap();
                t[x] = &t[x] * &Scalar::int(2);
            } else {
                let off: Vec<usize> = (0..8).filter(|x| !s.contains(x)).collect();
                for &x in off.choose_multiple(&mut r, 2) {
                    t[x] = t[s[0]].clone();
                }
            }
            let g = Signature::from_table(t).unwrap();
            ensure(!oracle.member(&g), || format!("perturbation {} stayed affine", case))?;
            ensure(!in_a(&g).member, || {
                format!("perturbed non-member {} accepted: {:?}", case, AffineOracle::key(&g))
            })?;
            perturbed += 1;
        }
    }
    ensure(perturbed == 10_000, || format!("{} perturbed cases", perturbed))
}

fn vanishing() -> Result<(), String> {
    let mut r = rng(6);
    let (mut van, mut non) = (0, 0);
    for case in 0..100 {
        let n = r.gen_range(1..=4);
        let f = if case % 2 == 0 {
            let up = r.gen_bool(0.5);
            unhat(&sig_on(&mut r, n, |a| if up { 2 * weight(a) > n } else { 2 * weight(a) < n }))
        } else {
            nonzero_sig(&mut r, n, 0.3)
        };
        if holant::classes::is_vanishing(&f) {
            van += 1;
            let sigs = SigSet::from_sigs(vec![("f".into(), f.clone())]);
            let p = GridParams {
                max_vertices: 6,
                max_edges: 12,
                max_arity: n,
                dangling: 0,
                palette: vec![("f".into(), n)],
            };
            for k in 0..50 {
                let g = random_grid(r.gen(), &p).ok_or_else(|| format!("case {}: no grid", case))?;
                let z = eval_holant(&g, &sigs).unwrap();
                ensure(z.is_zero(), || {
                    format!("case {} grid {}: vanishing signature gave {}", case, k, format_scalar(&z))
                })?;
            }
        } else {
            non += 1;
            let w = nonvanishing_witness(&f).map_err(|e| format!("case {}: {}", case, e))?;
            let z = eval_holant(&w.grid, &w.sigs).unwrap();
            ensure(!z.is_zero() && z == w.value, || {
                format!("case {}: witness value {}", case, format_scalar(&z))
            })?;
        }
    }
    ensure(van > 0 && non > 0, || format!("{} vanishing, {} not", van, non))
}

fn verified(s: &GadgetScript, what: &str, case: usize) -> Result<(), String> {
    let via_sig = s.replay().map_err(|e| format!("{} {}: {}", what, case, e))?;
    let via_grid = s.replay_grid().map_err(|e| format!("{} {}: {}", what, case, e))?;
    ensure(via_sig == s.claimed && via_grid == s.claimed, || {
        format!("{} {}: replay disagrees with claim", what, case)
    })
}

fn imbalanced_point(f: &Signature) -> Option<usize> {
    let n = f.arity();
    f.support().into_iter().find(|&a| 2 * weight(a) != n)
}

fn construction_replay() -> Result<(), String> {
    let mut r = rng(7);
    for case in 0..100 {
        let n = r.gen_range(1..=6);
        let f = nonzero_sig(&mut r, n, 0.4);
        if let Some(a) = imbalanced_point(&f) {
            verified(&selfloop_reduce(&f, a).map_err(|e| e.to_string())?, "selfloop_reduce", case)?;
        }

        let n = r.gen_range(1..=6);
        let up = r.gen_bool(0.5);
        let f = sig_on(&mut r, n, |a| if up { 2 * weight(a) > n } else { 2 * weight(a) < n });
        let dp = extract_delta_power(&f).map_err(|e| format!("delta power {}: {}", case, e))?;
        verified(&dp.script, "extract_delta_power", case)?;

        let n = [1, 3, 5][r.gen_range(0..3)];
        let f = nonzero_sig(&mut r, n, 0.4);
        for step in odd_arity_route(&f).map_err(|e| format!("odd route {}: {}", case, e))? {
            if let RouteStep::Descend { script } = step {
                verified(&script, "odd_arity_route", case)?;
            }
        }

        let n = r.gen_range(2..=6);
        let f = nonzero_sig(&mut r, n, 0.3);
        let supp = f.support();
        let top = (1usize << n) - 1;
        let pairs: Vec<(usize, usize)> = supp
            .iter()
            .flat_map(|&a| supp.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| a != b && !((a == 0 || a == top) && (b == 0 || b == top)))
            .collect();
        if let Some(&(a, b)) = pairs.choose(&mut r) {
            verified(&reduce_arity_gap(&f, a, b).map_err(|e| e.to_string())?, "reduce_arity_gap", case)?;
        }

        let m = invertible(&mut r);
        let h = apply_holographic(&m, &Signature::eq(3), Side::Column);
        verified(
            &ghz_normal_form_script(&h).map_err(|e| format!("ghz {}: {}", case, e))?,
            "ghz_normal_form",
            case,
        )?;
    }
    Ok(())
}

fn ghz_w() -> Result<(), String> {
    let mut r = rng(8);
    let w = Signature::symmetric_ints(&[0, 1, 0, 0]);
    for case in 0..200 {
        let ms: Vec<Mat2> = (0..3).map(|_| invertible(&mut r)).collect();
        let g = apply_slocc(&ms, &Signature::eq(3)).unwrap();
        ensure(entanglement_class(&g) == Ok(Entanglement::GHZ), || {
            format!("GHZ image {} misclassified", case)
        })?;
        let h = apply_slocc(&ms, &w).unwrap();
        ensure(entanglement_class(&h) == Ok(Entanglement::W), || {
            format!("W image {} misclassified", case)
        })?;
        let sym = apply_holographic(&ms[0], &Signature::eq(3), Side::Column);
        let m = ghz_normal_form(&sym).map_err(|e| format!("normal form {}: {}", case, e))?;
        ensure(apply_holographic(&m, &Signature::eq(3), Side::Column) == sym, || {
            format!("normal form {} does not reconstruct", case)
        })?;
    }
    Ok(())
}

fn embeddings() -> Result<(), String> {
    let mut r = rng(9);
    for case in 0..100 {
        let mut sigs = SigSet::new(holant::Field::Cyclo24);
        for k in 0..3 {
            sigs.insert(format!("c{}", k), sig(&mut r, k + 1, 0.3));
        }
        let n = r.gen_range(1..=6);
        let mut clauses = Vec::new();
        let mut occ = 0;
        for _ in 0..r.gen_range(1..=6) {
            let k = r.gen_range(0..3);
            if occ + k + 1 > 18 {
                break;
            }
            occ += k + 1;
            clauses.push(Clause {
                sig: format!("c{}", k),
                vars: (0..=k).map(|_| r.gen_range(0..n)).collect(),
            });
        }
        let inst = CspInstance { n, clauses };
        let (g, gs) = encode_csp_as_holant(&inst, &sigs);
        let (a, b) = (eval_csp(&inst, &sigs).unwrap(), eval_holant(&g, &gs).unwrap());
        ensure(a == b, || format!("csp {}: {} vs {}", case, format_scalar(&a), format_scalar(&b)))?;
    }
    for case in 0..100 {
        let mut sigs = SigSet::new(holant::Field::Cyclo24);
        for n in [2usize, 4] {
            sigs.insert(format!("e{}", n), sig_on(&mut r, n, |a| 2 * weight(a) == n));
        }
        let p = GridParams {
            max_vertices: 6,
            max_edges: 12,
            max_arity: 4,
            dangling: 0,
            palette: vec![("e2".into(), 2), ("e4".into(), 4)],
        };
        let g = random_grid(r.gen(), &p).ok_or("no EO grid")?;
        let (h, hs) = encode_eo_as_holant(&g, &sigs);
        let (a, b) = (eval_eo(&g, &sigs).unwrap(), eval_holant(&h, &hs).unwrap());
        ensure(a == b, || format!("eo {}: {} vs {}", case, format_scalar(&a), format_scalar(&b)))?;
    }
    Ok(())
}

fn kind(v: &Verdict) -> (&'static str, Option<String>) {
    match &v.outcome {
        Outcome::TractableFP { case, .. } => ("fp", Some(case.clone())),
        Outcome::TractableFPNP { case, .. } => ("fpnp", Some(case.clone())),
        Outcome::SharpPHard => ("hard", None),
        Outcome::HardModuloSearch { .. } => ("modulo_search", None),
        Outcome::NotApplicable { .. } => ("not_applicable", None),
    }
}

fn status(v: &Verdict, name: &str) -> Option<Status> {
    v.condition(name).map(|c| c.status)
}

fn sym(p: &[i64]) -> Signature {
    Signature::symmetric_ints(p)
}

fn golden_suite() -> Result<(), String> {
    let w = sym(&[0, 1, 0, 0]);
    let mut escape = vec![0i64; 16];
    for a in [0b0011, 0b0101, 0b1100] {
        escape[a] = 1;
    }
    let escape = Signature::from_ints(&escape);
    type Extra = fn(&Verdict) -> bool;
    let none: Extra = |_| true;
    let cases: Vec<(&str, Vec<Signature>, fn(&[Signature]) -> Verdict, &str, Option<&str>, Extra)> = vec![
        ("pc {Delta0}", vec![Signature::delta0()], |f| check_pc(f, &[]), "fp", Some("case3"), none),
        (
            "pc {[1,i]}",
            vec![Signature::unary(Scalar::one(), Scalar::i())],
            |f| check_pc(f, &[]),
            "fp",
            Some("vanishing"),
            |v| status(v, "case1") == Some(Status::Satisfied),
        ),
        (
            "pc {=3}",
            vec![Signature::eq(3)],
            |f| check_pc(f, &[]),
            "fp",
            Some("case5"),
            |v| match &v.outcome {
                Outcome::TractableFP {
                    certificate: CaseCert::Transform { cert, .. },
                    ..
                } => cert.matrix.normalized() == Mat2::identity(),
                _ => false,
            },
        ),
        (
            "pc {K[-1,1,0,0]}",
            vec![unhat(&sym(&[-1, 1, 0, 0]))],
            |f| check_pc(f, &[]),
            "fp",
            Some("vanishing"),
            |v| status(v, "case4") == Some(Status::Satisfied),
        ),
        (
            "pc {[0,1,0,0]}",
            vec![w.clone()],
            |f| check_pc(f, &[]),
            "modulo_search",
            None,
            |v| ["case1", "case2", "case3", "case4"].iter().all(|c| status(v, c) == Some(Status::Refuted)),
        ),
        (
            "pc {[1,0,0,2]}",
            vec![sym(&[1, 0, 0, 2])],
            |f| check_pc(f, &[]),
            "fp",
            Some("case6"),
            none,
        ),
        (
            "pc {[1,0,1,0]}",
            vec![sym(&[1, 0, 1, 0])],
            |f| check_pc(f, &[]),
            "fp",
            Some("case5"),
            none,
        ),
        (
            "pc {K[0,1,0], K[1,0]}",
            vec![unhat(&sym(&[0, 1, 0])), unhat(&Signature::delta0())],
            |f| check_pc(f, &[]),
            "fpnp",
            Some("case1"),
            none,
        ),
        (
            "pc {[1,1,0,0]}",
            vec![sym(&[1, 1, 0, 0])],
            |f| check_pc(f, &[]),
            "modulo_search",
            None,
            |v| (1..=6).all(|k| status(v, &format!("case{}", k)) == Some(Status::Refuted)),
        ),
        ("eo {!=2}", vec![Signature::neq2()], |f| check_eo(f).unwrap(), "fp", None, none),
        ("eo escape", vec![escape], |f| check_eo(f).unwrap(), "hard", None, none),
        ("eo {}", vec![], |f| check_eo(f).unwrap(), "fp", Some("vacuous"), none),
        (
            "delta0 {=3}",
            vec![Signature::eq(3)],
            |f| check_delta0(f, &[]),
            "fp",
            Some("A-transformable"),
            none,
        ),
        (
            "delta0 {K[0,1,0,0]}",
            vec![unhat(&w)],
            |f| check_delta0(f, &[]),
            "fp",
            Some("KM-closure"),
            none,
        ),
        (
            "single-weighted {Delta0, Delta1}",
            vec![Signature::delta0(), Signature::delta1()],
            |f| check_single_weighted(f).unwrap(),
            "fpnp",
            Some("case2"),
            none,
        ),
        ("csp {=3}", vec![Signature::eq(3)], check_csp, "fp", None, none),
        (
            "cspd3 {[0,1,0,0]}",
            vec![w.clone()],
            |f| check_cspd_neq(f, 3).unwrap(),
            "hard",
            None,
            none,
        ),
        ("holantc {[0,1,0,0]}", vec![w], |f| check_holantc_conditions(f, &[]), "hard", None, none),
    ];
    ensure(cases.len() >= 12, || "suite too small".into())?;
    for (name, fs, run, want, case, extra) in cases {
        let v = run(&fs);
        let (got, got_case) = kind(&v);
        ensure(got == want, || format!("{}: got {} {:?}, expected {}", name, got, got_case, want))?;
        if let Some(c) = case {
            ensure(got_case.as_deref() == Some(c), || {
                format!("{}: case {:?}, expected {}", name, got_case, c)
            })?;
        }
        ensure(extra(&v), || format!("{}: condition ledger differs", name))?;
        ensure(replay_verdict(&fs, &v), || format!("{}: certificate does not replay", name))?;
    }
    Ok(())
}

fn orthogonal_stability() -> Result<(), String> {
    let families: Vec<Vec<Signature>> = vec![
        vec![Signature::delta0()],
        vec![Signature::unary(Scalar::one(), Scalar::i())],
        vec![Signature::eq(3)],
        vec![unhat(&sym(&[-1, 1, 0, 0]))],
        vec![sym(&[0, 1, 0, 0])],
        vec![sym(&[1, 0, 0, 2])],
        vec![sym(&[1, 0, 1, 0])],
        vec![unhat(&sym(&[0, 1, 0])), unhat(&Signature::delta0())],
        vec![sym(&[1, 1, 0, 0])],
        vec![Signature::eq(3), Signature::from_ints(&[1, 2])],
    ];
    let mut r = rng(11);
    let mut pairs = 0;
    for (fi, fs) in families.iter().enumerate() {
        let base = check_pc(fs, &[]).outcome.class();
        for _ in 0..5 {
            let o = loop {
                let (a, b) = (nonzero(&mut r), scalar(&mut r, 0.2));
                let m = if r.gen_bool(0.5) {
                    Mat2::new(a.clone(), b.clone(), -b, a)
                } else {
                    Mat2::new(a.clone(), b.clone(), b, -a)
                };
                if m.is_invertible() {
                    break m;
                }
            };
            let moved: Vec<Signature> = fs.iter().map(|f| apply_holographic(&o, f, Side::Column)).collect();
            let got = check_pc(&moved, &[]).outcome.class();
            ensure(got == base, || {
                format!("family {} under {}: {} became {}", fi, serde_json::to_string(&o).unwrap(), base, got)
            })?;
            pairs += 1;
        }
    }
    ensure(pairs == 50, || format!("{} pairs", pairs))
}
