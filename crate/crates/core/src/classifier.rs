//! Dichotomy checks. Each check evaluates every tractability condition,
//! records a report per condition and settles on the first satisfied one in
//! the fixed order. Tractable verdicts carry certificates that
//! [`replay_verdict`] re-checks from scratch.

use crate::classes::{
    eo_pairing_class, eo_profile, exists3_class, in_a, in_a_dr, in_l_local_affine, in_m_closure, in_p, in_t_closure, in_xm_closure, is_eo, is_eo_geq,
    is_eo_leq, is_rebalancing, is_single_weighted, replay, restrict_to_eo, to_eo_padding, transformable_search, ClassError, ClassId, ClassReport,
    EoProfile, Target, TransformCert, MAX_PAIRING_ARITY,
};
use crate::constructions::{entanglement_class, Entanglement};
use crate::factor::upf;
use crate::signature::Signature;
use crate::transforms::{hat, Mat2};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifierError {
    #[error("no non-trivial signature of odd arity")]
    NoOddAritySignature,
    #[error("signature {0} is not supported on the balanced slice")]
    NotEOSet(String),
    #[error("signature {0} is not single-weighted")]
    NotSingleWeighted(String),
    #[error("T_{0} is not exact over Q(zeta_24)")]
    UnsupportedD(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    Holant,
    HolantDelta0,
    Eo,
    SingleWeighted,
    Csp,
    Csp2,
    CspdNeq { d: u32 },
    HolantC,
}

/// How a certificate's signature is obtained from an input signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Image {
    Identity,
    Hat,
    /// `hat(f)` restricted to the balanced slice.
    HatEo,
    /// `hat(f)` padded into the balanced slice.
    HatPadded,
    Eo,
    Padded,
}

impl Image {
    fn apply(self, f: &Signature) -> Option<Signature> {
        Some(match self {
            Image::Identity => f.clone(),
            Image::Hat => hat(f),
            Image::HatEo => restrict_to_eo(&hat(f)),
            Image::HatPadded => pad(&hat(f))?,
            Image::Eo => restrict_to_eo(f),
            Image::Padded => pad(f)?,
        })
    }
}

fn pad(f: &Signature) -> Option<Signature> {
    if f.arity() > MAX_PAIRING_ARITY {
        return None;
    }
    to_eo_padding(f).ok()
}

/// Membership of one input's image.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evidence {
    pub input: usize,
    pub image: Image,
    pub report: ClassReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseCert {
    /// No signature carries information.
    Vacuous,
    /// Every hat is strictly above (`more_ones`) or strictly below the slice.
    Vanishing { more_ones: bool },
    /// Every image is in the class named by its report.
    Members { items: Vec<Evidence> },
    /// Triple-XOR uniformity plus pairing-class membership of every image.
    /// `side` records the one-sided profile of the hats when required.
    EoBattery {
        side: Option<EoSide>,
        mitsu_up: bool,
        items: Vec<Evidence>,
    },
    /// A basis change; `with` lists the signatures added to the input.
    Transform { cert: TransformCert, with: Vec<String> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EoSide {
    Geq,
    Leq,
    /// Single-weighted with both a non-`EO>=` and a non-`EO<=` hat.
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Satisfied,
    /// Refuted by a decidable predicate.
    Refuted,
    /// The candidate search ran dry; not a proof of absence.
    SearchExhausted,
    /// A cap (pairing enumeration, padding size) stopped the check.
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CaseCert>,
}

impl ConditionReport {
    fn sat(name: &str, cert: CaseCert, detail: impl Into<String>) -> Self {
        ConditionReport {
            name: name.into(),
            status: Status::Satisfied,
            detail: detail.into(),
            certificate: Some(cert),
        }
    }

    fn fail(name: &str, status: Status, detail: impl Into<String>) -> Self {
        ConditionReport {
            name: name.into(),
            status,
            detail: detail.into(),
            certificate: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    #[serde(rename = "tractable_fp")]
    TractableFP {
        case: String,
        certificate: CaseCert,
    },
    #[serde(rename = "tractable_fpnp")]
    TractableFPNP {
        case: String,
        certificate: CaseCert,
    },
    #[serde(rename = "sharp_p_hard")]
    SharpPHard,
    HardModuloSearch {
        unresolved: Vec<String>,
    },
    NotApplicable {
        reason: String,
    },
}

impl Outcome {
    /// `tractable`, `hard` or `not_applicable`; the coarse class compared by
    /// the stability properties.
    pub fn class(&self) -> &'static str {
        match self {
            Outcome::TractableFP { .. } | Outcome::TractableFPNP { .. } => "tractable",
            Outcome::SharpPHard | Outcome::HardModuloSearch { .. } => "hard",
            Outcome::NotApplicable { .. } => "not_applicable",
        }
    }

    pub fn is_tractable(&self) -> bool {
        self.class() == "tractable"
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub problem: Problem,
    pub outcome: Outcome,
    pub conditions: Vec<ConditionReport>,
}

impl Verdict {
    pub fn condition(&self, name: &str) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Tier {
    Fp,
    FpNp,
}

/// First satisfied condition wins; otherwise hard, and only `SharpPHard` when
/// every condition was refuted decidably.
fn settle(problem: Problem, conds: Vec<(ConditionReport, Tier)>) -> Verdict {
    let mut outcome = None;
    for (c, tier) in &conds {
        if c.status == Status::Satisfied {
            let certificate = c.certificate.clone().expect("satisfied conditions carry a certificate");
            outcome = Some(match tier {
                Tier::Fp => Outcome::TractableFP {
                    case: c.name.clone(),
                    certificate,
                },
                Tier::FpNp => Outcome::TractableFPNP {
                    case: c.name.clone(),
                    certificate,
                },
            });
            break;
        }
    }
    let outcome = outcome.unwrap_or_else(|| {
        let unresolved: Vec<String> = conds
            .iter()
            .filter(|(c, _)| c.status != Status::Refuted)
            .map(|(c, _)| c.name.clone())
            .collect();
        if unresolved.is_empty() {
            Outcome::SharpPHard
        } else {
            Outcome::HardModuloSearch { unresolved }
        }
    });
    Verdict {
        problem,
        outcome,
        conditions: conds.into_iter().map(|(c, _)| c).collect(),
    }
}

fn label(names: &[String], k: usize) -> String {
    names.get(k).cloned().unwrap_or_else(|| format!("#{}", k))
}

/// Every image in the class tested by `test`.
fn all_in(name: &str, fs: &[Signature], names: &[String], image: Image, test: impl Fn(&Signature) -> ClassReport) -> ConditionReport {
    let mut items = Vec::new();
    for (k, f) in fs.iter().enumerate() {
        let Some(g) = image.apply(f) else {
            return ConditionReport::fail(name, Status::Undecided, format!("{}: image too large", label(names, k)));
        };
        let r = test(&g);
        if !r.member {
            return ConditionReport::fail(
                name,
                Status::Refuted,
                format!("{}: {}", label(names, k), r.counterexample.unwrap_or_default()),
            );
        }
        items.push(Evidence { input: k, image, report: r });
    }
    ConditionReport::sat(name, CaseCert::Members { items }, "all members")
}

/// The first satisfied of several alternatives; refuted only if all are.
fn any_of(name: &str, alts: Vec<ConditionReport>) -> ConditionReport {
    if let Some(c) = alts.iter().find(|c| c.status == Status::Satisfied) {
        return ConditionReport {
            name: name.into(),
            ..c.clone()
        };
    }
    let status = if alts.iter().all(|c| c.status == Status::Refuted) {
        Status::Refuted
    } else if alts.iter().any(|c| c.status == Status::Undecided) {
        Status::Undecided
    } else {
        Status::SearchExhausted
    };
    let detail = alts.iter().map(|c| c.detail.clone()).collect::<Vec<_>>().join("; ");
    ConditionReport::fail(name, status, detail)
}

/// An irreducible W-type ternary factor rules out `A`- and `P`-transformability:
/// basis changes preserve the factorization and the GHZ/W type, and irreducible
/// ternary members of `A` and `P` are GHZ-type.
fn w_factor(fs: &[Signature]) -> Option<String> {
    for (k, f) in fs.iter().enumerate() {
        if f.is_trivial() {
            continue;
        }
        let Ok(fac) = upf(f) else { continue };
        for fc in fac.factors {
            if fc.sig.arity() == 3 && entanglement_class(&fc.sig) == Ok(Entanglement::W) {
                return Some(format!("signature {} has a W-type ternary factor on variables {:?}", k, fc.vars));
            }
        }
    }
    None
}

fn transform_condition(name: &str, fs: &[Signature], with: &[(&str, Signature)], target: Target, extra: &[Mat2]) -> ConditionReport {
    let mut all = fs.to_vec();
    all.extend(with.iter().map(|(_, s)| s.clone()));
    match transformable_search(&all, target, extra) {
        Some(cert) => {
            let detail = format!("matrix from {}", cert.source);
            let with = with.iter().map(|(n, _)| n.to_string()).collect();
            ConditionReport::sat(name, CaseCert::Transform { cert, with }, detail)
        }
        None => match (target, w_factor(&all)) {
            (Target::A | Target::P, Some(why)) => ConditionReport::fail(name, Status::Refuted, why),
            _ => ConditionReport::fail(name, Status::SearchExhausted, "no candidate basis change works (search is incomplete)"),
        },
    }
}

fn with_sig(name: &str) -> Option<Signature> {
    match name {
        "delta0" => Some(Signature::delta0()),
        "delta1" => Some(Signature::delta1()),
        _ => None,
    }
}

/// Triple-XOR uniformity and pairing-class membership over the images.
fn eo_battery(name: &str, fs: &[Signature], names: &[String], image: Image, side: Option<EoSide>) -> ConditionReport {
    let mut imgs = Vec::new();
    for (k, f) in fs.iter().enumerate() {
        if f.is_trivial() {
            continue;
        }
        match image.apply(f) {
            Some(g) => imgs.push((k, g)),
            None => {
                return ConditionReport::fail(
                    name,
                    Status::Undecided,
                    format!("{}: padded arity exceeds the pairing cap", label(names, k)),
                )
            }
        }
    }
    let (mut up, mut down) = (true, true);
    for (k, g) in &imgs {
        match exists3_class(g) {
            Ok(e) => {
                up &= e.mitsu_up;
                down &= e.mitsu_down;
            }
            Err(e) => return ConditionReport::fail(name, Status::Refuted, format!("{}: {}", label(names, *k), e)),
        }
    }
    if !up && !down {
        return ConditionReport::fail(name, Status::Refuted, "neither all mitsu-up nor all mitsu-down");
    }
    let mut undecided = None;
    for which in [ClassId::A, ClassId::P] {
        let mut items = Vec::new();
        let mut ok = true;
        for (k, g) in &imgs {
            match eo_pairing_class(g, which) {
                Ok(r) if r.member => items.push(Evidence { input: *k, image, report: r }),
                Ok(_) => {
                    ok = false;
                    break;
                }
                Err(e) => {
                    undecided = Some(format!("{}: {}", label(names, *k), e));
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            let cls = if which == ClassId::A { "EO_M[A]" } else { "EO_M[P]" };
            let dir = if up { "mitsu-up" } else { "mitsu-down" };
            return ConditionReport::sat(name, CaseCert::EoBattery { side, mitsu_up: up, items }, format!("{}, {}", dir, cls));
        }
    }
    match undecided {
        Some(why) => ConditionReport::fail(name, Status::Undecided, why),
        None => ConditionReport::fail(name, Status::Refuted, "neither all EO_M[A] nor all EO_M[P]"),
    }
}

fn default_names(fs: &[Signature]) -> Vec<String> {
    (0..fs.len()).map(|k| format!("#{}", k)).collect()
}

fn hats_one_sided(fs: &[Signature]) -> Option<bool> {
    let hs: Vec<Signature> = fs.iter().filter(|f| !f.is_trivial()).map(hat).collect();
    if hs.iter().all(|h| eo_profile(h) == Ok(EoProfile::Gt)) {
        Some(true)
    } else if hs.iter().all(|h| eo_profile(h) == Ok(EoProfile::Lt)) {
        Some(false)
    } else {
        None
    }
}

/// The seven tractable cases for sets containing a non-trivial odd-arity
/// signature, preceded by the vanishing fast path.
pub fn check_pc(fs: &[Signature], extra: &[Mat2]) -> Verdict {
    check_pc_named(fs, &default_names(fs), extra)
}

pub fn check_pc_named(fs: &[Signature], names: &[String], extra: &[Mat2]) -> Verdict {
    if !fs.iter().any(|f| !f.is_trivial() && f.arity() % 2 == 1) {
        let reason = ClassifierError::NoOddAritySignature.to_string();
        return Verdict {
            problem: Problem::Holant,
            outcome: Outcome::NotApplicable { reason },
            conditions: vec![],
        };
    }
    let hats: Vec<Signature> = fs.iter().map(hat).collect();
    let nontrivial: Vec<&Signature> = hats.iter().filter(|h| !h.is_trivial()).collect();
    let mut conds = Vec::new();

    let vanishing = match hats_one_sided(fs) {
        Some(more_ones) => ConditionReport::sat(
            "vanishing",
            CaseCert::Vanishing { more_ones },
            if more_ones { "every hat is EO>" } else { "every hat is EO<" },
        ),
        None => ConditionReport::fail("vanishing", Status::Refuted, "hats are not all EO> or all EO<"),
    };
    conds.push((vanishing, Tier::Fp));

    let case1 = {
        let side = if nontrivial.iter().all(|h| is_eo_geq(h)) {
            Some(EoSide::Geq)
        } else if nontrivial.iter().all(|h| is_eo_leq(h)) {
            Some(EoSide::Leq)
        } else {
            None
        };
        match side {
            Some(s) => eo_battery("case1", fs, names, Image::HatEo, Some(s)),
            None => ConditionReport::fail("case1", Status::Refuted, "hats are not all EO>= or all EO<="),
        }
    };
    conds.push((case1, Tier::FpNp));

    let case2 = if let Some(k) = nontrivial.iter().position(|h| is_single_weighted(h).is_none()) {
        ConditionReport::fail("case2", Status::Refuted, format!("hat {} is not single-weighted", k))
    } else if nontrivial.iter().all(|h| is_eo_geq(h)) || nontrivial.iter().all(|h| is_eo_leq(h)) {
        ConditionReport::fail("case2", Status::Refuted, "hats are all EO>= or all EO<=")
    } else {
        eo_battery("case2", fs, names, Image::HatPadded, Some(EoSide::Mixed))
    };
    conds.push((case2, Tier::FpNp));

    conds.push((all_in("case3", fs, names, Image::Identity, in_t_closure), Tier::Fp));
    let case4 = any_of(
        "case4",
        vec![
            all_in("case4", fs, names, Image::Hat, in_m_closure),
            all_in("case4", fs, names, Image::Hat, in_xm_closure),
        ],
    );
    conds.push((case4, Tier::Fp));
    conds.push((transform_condition("case5", fs, &[], Target::A, extra), Tier::Fp));
    conds.push((transform_condition("case6", fs, &[], Target::P, extra), Tier::Fp));
    conds.push((transform_condition("case7", fs, &[], Target::L, extra), Tier::Fp));
    settle(Problem::Holant, conds)
}

/// Five tractable cases when `Delta_0` is available for free.
pub fn check_delta0(fs: &[Signature], extra: &[Mat2]) -> Verdict {
    let names = default_names(fs);
    let d0 = [("delta0", Signature::delta0())];
    let conds = vec![
        (all_in("T-closure", fs, &names, Image::Identity, in_t_closure), Tier::Fp),
        (
            any_of(
                "KM-closure",
                vec![
                    all_in("KM-closure", fs, &names, Image::Hat, in_m_closure),
                    all_in("KXM-closure", fs, &names, Image::Hat, in_xm_closure),
                ],
            ),
            Tier::Fp,
        ),
        (transform_condition("A-transformable", fs, &d0, Target::A, extra), Tier::Fp),
        (transform_condition("P-transformable", fs, &[], Target::P, extra), Tier::Fp),
        (transform_condition("L-transformable", fs, &d0, Target::L, extra), Tier::Fp),
    ];
    settle(Problem::HolantDelta0, conds)
}

fn vacuous(problem: Problem) -> Verdict {
    let c = ConditionReport::sat("vacuous", CaseCert::Vacuous, "no non-trivial signature");
    settle(problem, vec![(c, Tier::Fp)])
}

/// Eulerian-orientation counting. Tractable cases are labeled FP^NP, and FP
/// when the set is also 0- or 1-rebalancing.
pub fn check_eo(fs: &[Signature]) -> Result<Verdict, ClassifierError> {
    let names = default_names(fs);
    if let Some(k) = fs.iter().position(|f| !is_eo(f)) {
        return Err(ClassifierError::NotEOSet(label(&names, k)));
    }
    if fs.iter().all(|f| f.is_trivial()) {
        return Ok(vacuous(Problem::Eo));
    }
    let battery = eo_battery("eo", fs, &names, Image::Identity, None);
    if battery.status != Status::Satisfied {
        return Ok(settle(Problem::Eo, vec![(battery, Tier::FpNp)]));
    }
    let mut conds = Vec::new();
    for c in [0u8, 1] {
        let name = format!("rebalancing{}", c);
        let cls = if c == 0 { ClassId::Rebalancing0 } else { ClassId::Rebalancing1 };
        let mut items = Vec::new();
        let mut failed = None;
        for (k, f) in fs.iter().enumerate() {
            match is_rebalancing(f, c) {
                Ok(r) if r.member => items.push(Evidence {
                    input: k,
                    image: Image::Identity,
                    report: r.with_class(cls),
                }),
                Ok(r) => {
                    failed = Some(format!("{}: {}", label(&names, k), r.counterexample.unwrap_or_default()));
                    break;
                }
                Err(e) => {
                    failed = Some(e.to_string());
                    break;
                }
            }
        }
        let rep = match failed {
            None => ConditionReport::sat(&name, CaseCert::Members { items }, "rebalancing"),
            Some(why) => ConditionReport::fail(&name, Status::Refuted, why),
        };
        conds.push((rep, Tier::Fp));
    }
    // rebalancing alone is not tractability: it only refines the battery
    let refine = conds.iter().find(|(c, _)| c.status == Status::Satisfied).map(|(c, _)| c.clone());
    let mut v = settle(Problem::Eo, vec![(battery.clone(), Tier::FpNp)]);
    if let Some(r) = refine {
        v.outcome = Outcome::TractableFP {
            case: format!("eo+{}", r.name),
            certificate: battery.certificate.clone().expect("satisfied"),
        };
    }
    v.conditions.extend(conds.into_iter().map(|(c, _)| c));
    Ok(v)
}

/// Holant with the K basis over single-weighted signatures.
pub fn check_single_weighted(fs: &[Signature]) -> Result<Verdict, ClassifierError> {
    let names = default_names(fs);
    if let Some(k) = fs.iter().position(|f| !f.is_trivial() && is_single_weighted(f).is_none()) {
        return Err(ClassifierError::NotSingleWeighted(label(&names, k)));
    }
    let nontrivial: Vec<&Signature> = fs.iter().filter(|f| !f.is_trivial()).collect();
    if nontrivial.is_empty() {
        return Ok(vacuous(Problem::SingleWeighted));
    }
    let (c1, c2);
    if let Some(side) = if nontrivial.iter().all(|f| is_eo_geq(f)) {
        Some(EoSide::Geq)
    } else if nontrivial.iter().all(|f| is_eo_leq(f)) {
        Some(EoSide::Leq)
    } else {
        None
    } {
        c1 = eo_battery("case1", fs, &names, Image::Eo, Some(side));
        c2 = ConditionReport::fail("case2", Status::Refuted, "all EO>= or all EO<=");
    } else {
        c1 = ConditionReport::fail("case1", Status::Refuted, "not all EO>= and not all EO<=");
        c2 = eo_battery("case2", fs, &names, Image::Padded, Some(EoSide::Mixed));
    }
    Ok(settle(Problem::SingleWeighted, vec![(c1, Tier::FpNp), (c2, Tier::FpNp)]))
}

pub fn check_csp(fs: &[Signature]) -> Verdict {
    let names = default_names(fs);
    let conds = vec![
        (all_in("A", fs, &names, Image::Identity, in_a), Tier::Fp),
        (all_in("P", fs, &names, Image::Identity, in_p), Tier::Fp),
    ];
    settle(Problem::Csp, conds)
}

pub fn check_csp2(fs: &[Signature]) -> Verdict {
    let names = default_names(fs);
    let a21 = |f: &Signature| in_a_dr(f, 2, 1).expect("T_2 is exact");
    let conds = vec![
        (all_in("A", fs, &names, Image::Identity, in_a), Tier::Fp),
        (all_in("P", fs, &names, Image::Identity, in_p), Tier::Fp),
        (all_in("A_2^1", fs, &names, Image::Identity, a21), Tier::Fp),
        (all_in("L", fs, &names, Image::Identity, in_l_local_affine), Tier::Fp),
    ];
    settle(Problem::Csp2, conds)
}

/// `#CSP_d(!=_2, F)`: `F` inside `P` or inside some `A_d^r`, `r = 1..d`.
pub fn check_cspd_neq(fs: &[Signature], d: u32) -> Result<Verdict, ClassifierError> {
    let names = default_names(fs);
    let exact = fs.iter().all(|f| f.is_exact());
    if d == 0 || (exact && d > 3) {
        return Err(ClassifierError::UnsupportedD(d));
    }
    let mut conds = vec![(all_in("P", fs, &names, Image::Identity, in_p), Tier::Fp)];
    for r in 1..=d {
        let test = move |f: &Signature| match in_a_dr(f, d, r) {
            Ok(rep) => rep,
            Err(ClassError::UnsupportedD(_)) | Err(_) => ClassReport::non_member(ClassId::Adr { d, r }, "unsupported"),
        };
        conds.push((all_in(&format!("A_{}^{}", d, r), fs, &names, Image::Identity, test), Tier::Fp));
    }
    Ok(settle(Problem::CspdNeq { d }, conds))
}

/// Holant with both pins available.
pub fn check_holantc_conditions(fs: &[Signature], extra: &[Mat2]) -> Verdict {
    let names = default_names(fs);
    let pins = [("delta0", Signature::delta0()), ("delta1", Signature::delta1())];
    let conds = vec![
        (all_in("T-closure", fs, &names, Image::Identity, in_t_closure), Tier::Fp),
        (transform_condition("P-transformable", fs, &pins, Target::P, extra), Tier::Fp),
        (
            any_of(
                "KM-closure",
                vec![
                    all_in("KM-closure", fs, &names, Image::Hat, in_m_closure),
                    all_in("KXM-closure", fs, &names, Image::Hat, in_xm_closure),
                ],
            ),
            Tier::Fp,
        ),
        (transform_condition("A-transformable", fs, &pins, Target::A, extra), Tier::Fp),
        (all_in("L", fs, &names, Image::Identity, in_l_local_affine), Tier::Fp),
    ];
    settle(Problem::HolantC, conds)
}

fn replay_items(fs: &[Signature], items: &[Evidence], skip_trivial: bool) -> bool {
    let mut covered = vec![false; fs.len()];
    for it in items {
        let Some(f) = fs.get(it.input) else {
            return false;
        };
        let Some(g) = it.image.apply(f) else {
            return false;
        };
        if !it.report.member || !replay(&g, &it.report) {
            return false;
        }
        covered[it.input] = true;
    }
    fs.iter().zip(covered).all(|(f, c)| c || (skip_trivial && f.is_trivial()))
}

/// Re-check a case certificate against the input set.
pub fn replay_case(fs: &[Signature], cert: &CaseCert) -> bool {
    match cert {
        CaseCert::Vacuous => fs.iter().all(|f| f.is_trivial()),
        CaseCert::Vanishing { more_ones } => hats_one_sided(fs) == Some(*more_ones),
        CaseCert::Members { items } => replay_items(fs, items, false),
        CaseCert::EoBattery { side, mitsu_up, items } => {
            let on_hats = items.first().is_some_and(|it| matches!(it.image, Image::HatEo | Image::HatPadded));
            let base: Vec<Signature> = fs
                .iter()
                .filter(|f| !f.is_trivial())
                .map(|f| if on_hats { hat(f) } else { f.clone() })
                .collect();
            let side_ok = match side {
                Some(EoSide::Geq) => base.iter().all(is_eo_geq),
                Some(EoSide::Leq) => base.iter().all(is_eo_leq),
                Some(EoSide::Mixed) => !base.iter().all(is_eo_geq) && !base.iter().all(is_eo_leq),
                None => base.iter().all(is_eo),
            };
            let uniform = items.iter().all(|it| {
                let g = fs.get(it.input).and_then(|f| it.image.apply(f));
                g.and_then(|g| exists3_class(&g).ok())
                    .is_some_and(|e| if *mitsu_up { e.mitsu_up } else { e.mitsu_down })
            });
            let same_class = items.windows(2).all(|w| w[0].report.class == w[1].report.class);
            side_ok && uniform && same_class && replay_items(fs, items, true)
        }
        CaseCert::Transform { cert, with } => {
            let mut all = fs.to_vec();
            for w in with {
                match with_sig(w) {
                    Some(s) => all.push(s.into_field(fs.first().map_or(crate::scalar::Field::Cyclo24, |f| f.field()))),
                    None => return false,
                }
            }
            cert.verify(&all)
        }
    }
}

/// Tractable verdicts must replay; hard verdicts replay trivially.
pub fn replay_verdict(fs: &[Signature], v: &Verdict) -> bool {
    match &v.outcome {
        Outcome::TractableFP { certificate, .. } | Outcome::TractableFPNP { certificate, .. } => replay_case(fs, certificate),
        _ => true,
    }
}
