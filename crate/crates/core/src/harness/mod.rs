//! The law registry: every finitized statement as a check over a grid of
//! instances, with reports and replay.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::space::{FiniteSpace, SpaceSpec};
use crate::transfer::DEFAULT_DEPTH;

/// Fails the enclosing check with a message and a serializable witness.
macro_rules! ensure {
    ($cond:expr, $witness:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::harness::violation(format!($($fmt)+), $witness));
        }
    };
}

pub mod enumerate;
mod functions;
mod lattice;
mod transfer_laws;

pub use enumerate::{enumerate_spaces, topologies_by_brute_force};

/// Why a check failed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub message: String,
    #[serde(default)]
    pub witness: Value,
}

impl From<Error> for Violation {
    fn from(e: Error) -> Self {
        Violation { message: format!("error: {e}"), witness: Value::Null }
    }
}

pub type Outcome = std::result::Result<(), Violation>;

pub(crate) fn violation(message: String, witness: impl Serialize) -> Violation {
    Violation { message, witness: serde_json::to_value(witness).unwrap_or(Value::Null) }
}

/// A serialized instance: enough to rebuild the check's input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub space: SpaceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<SpaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

impl Instance {
    fn of(space: &FiniteSpace) -> Self {
        Instance { space: space.spec(), target: None, depth: None }
    }

    fn key(&self) -> String {
        serde_json::to_string(self).expect("instances serialize")
    }
}

/// A built instance handed to a check.
pub struct Case {
    pub space: FiniteSpace,
    pub target: Option<FiniteSpace>,
    pub depth: usize,
}

impl Case {
    pub fn build(instance: &Instance) -> Result<Self> {
        Ok(Case {
            space: FiniteSpace::build(&instance.space)?,
            target: instance.target.as_ref().map(FiniteSpace::build).transpose()?,
            depth: instance.depth.unwrap_or(DEFAULT_DEPTH),
        })
    }

    pub(crate) fn target(&self) -> Result<&FiniteSpace> {
        self.target.as_ref().ok_or_else(|| Error::InconsistentSpec("this law needs a target space".into()))
    }
}

/// Which instances a law runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grid {
    /// T₀ spaces up to 4 points and all spaces up to 3 points.
    Lattice,
    /// All spaces up to 3 points.
    Small,
    /// Lattice spaces that are normal and regular.
    Regular,
    /// Discrete spaces with 2 to 4 points.
    Discrete,
    /// T₀ spaces up to 3 points against the Sierpiński space, the discrete
    /// 2-point space and the 3-chain.
    Function,
    /// A fixed list of small spaces plus seeded random 4-point posets.
    Transfer,
}

impl Grid {
    pub fn max_points(self) -> usize {
        match self {
            Grid::Lattice | Grid::Regular | Grid::Discrete | Grid::Transfer => 4,
            Grid::Small | Grid::Function => 3,
        }
    }
}

/// Limits applied to every grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScopeConfig {
    pub max_points: Option<usize>,
    pub depth: usize,
    pub seed: u64,
}

impl Default for ScopeConfig {
    fn default() -> Self {
        ScopeConfig { max_points: None, depth: DEFAULT_DEPTH, seed: 0 }
    }
}

/// Number of random posets added to the transfer grid.
pub const RANDOM_TRANSFER_SPACES: usize = 3;

fn lattice_spaces(limit: usize) -> Result<Vec<FiniteSpace>> {
    let mut out = Vec::new();
    for n in 1..=limit.min(4) {
        out.extend(enumerate_spaces(n, n > 3)?);
    }
    Ok(out)
}

fn random_poset(rng: &mut ChaCha8Rng, n: usize) -> Result<FiniteSpace> {
    // a random relation on a random labeling, closed transitively
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.4) {
                edges.push((order[i], order[j]));
            }
        }
    }
    FiniteSpace::from_preorder(n, edges)
}

/// The curated spaces for the transfer laws.
pub fn transfer_spaces(seed: u64) -> Result<Vec<FiniteSpace>> {
    let point = FiniteSpace::discrete(1);
    let mut out = vec![
        FiniteSpace::discrete(2),
        FiniteSpace::discrete(3),
        FiniteSpace::sierpinski(),
        FiniteSpace::sierpinski().disjoint_union(&point),
        FiniteSpace::chain(3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRANSFER_SPACES {
        out.push(random_poset(&mut rng, 4)?);
    }
    Ok(out)
}

/// The instances of a grid under the given limits, sorted by their
/// serialization.
pub fn grid_instances(grid: Grid, cfg: &ScopeConfig) -> Result<Vec<Instance>> {
    let limit = cfg.max_points.unwrap_or(usize::MAX).min(grid.max_points());
    let mut out: Vec<Instance> = match grid {
        Grid::Lattice => lattice_spaces(limit)?.iter().map(Instance::of).collect(),
        Grid::Small => (1..=limit)
            .map(|n| enumerate_spaces(n, false))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .flatten()
            .map(Instance::of)
            .collect(),
        Grid::Regular => lattice_spaces(limit)?
            .iter()
            .filter(|s| {
                let p = s.separation_profile();
                p.normal && p.regular
            })
            .map(Instance::of)
            .collect(),
        Grid::Discrete => (2..=limit).map(|n| Instance::of(&FiniteSpace::discrete(n))).collect(),
        Grid::Function => {
            let targets = [FiniteSpace::sierpinski(), FiniteSpace::discrete(2), FiniteSpace::chain(3)];
            let mut v = Vec::new();
            for n in 1..=limit {
                for x in enumerate_spaces(n, true)? {
                    for z in &targets {
                        v.push(Instance { space: x.spec(), target: Some(z.spec()), depth: None });
                    }
                }
            }
            v
        }
        Grid::Transfer => transfer_spaces(cfg.seed)?
            .iter()
            .filter(|s| s.points() <= limit)
            .map(|s| Instance { space: s.spec(), target: None, depth: Some(cfg.depth) })
            .collect(),
    };
    out.sort_by_cached_key(Instance::key);
    out.dedup();
    Ok(out)
}

/// One registered law.
pub struct LawRecord {
    pub id: &'static str,
    /// Citation label of the statement the law finitizes.
    pub anchor: &'static str,
    pub summary: &'static str,
    pub grid: Grid,
    pub check: fn(&Case) -> Outcome,
}

macro_rules! law {
    ($id:literal, $anchor:literal, $grid:ident, $check:path, $summary:literal) => {
        LawRecord { id: $id, anchor: $anchor, summary: $summary, grid: Grid::$grid, check: $check }
    };
}

/// All laws, sorted by id.
pub fn registry() -> Vec<LawRecord> {
    use functions as f;
    use lattice as l;
    use transfer_laws as t;
    let mut laws = vec![
        law!(
            "general-def",
            "general-def",
            Function,
            f::general_def,
            "the initial lift agrees with the pointwise definition"
        ),
        law!(
            "pro-idealbasis",
            "pro:idealbasis",
            Function,
            f::ideal_basis,
            "lifts of solid τ only need an ideal basis or a filtered closed basis of Z"
        ),
        law!(
            "eq-bracketnotation",
            "eq:bracketnotation",
            Function,
            f::bracket_notation,
            "[D,U] as a set of maps, and [𝒪(D),U] = [D,U]"
        ),
        law!("eq-topbase", "eq:topbase", Function, f::top_base, "[𝒜,U] as a set of maps, with finite intersections"),
        law!(
            "alpha-collections",
            "alpha-collections",
            Lattice,
            l::alpha_collections,
            "p, k and κ coincide and consist of compact families; s is the point families"
        ),
        law!(
            "crit-inh",
            "crit-inh",
            Lattice,
            l::crit_inh,
            "the union over superset kernels reduces to the interior of the intersection"
        ),
        law!("prop-alpha-lift", "prop:alpha-lift", Function, f::alpha_lift, "α(X,Z) = α(X,$)^⇑"),
        law!("prop-natural-lift", "prop:natural-lift", Function, f::natural_lift, "[X,Z] = [X,$]^⇑"),
        law!(
            "upper-kuratowski",
            "upper-kuratowski",
            Small,
            l::upper_kuratowski,
            "the adherence formula on closed sets is the complement image of [X,$]"
        ),
        law!(
            "solid-axioms",
            "solid-axioms",
            Lattice,
            l::solid_axioms,
            "[X,$] and α(X,$) for α ⊆ κ are solid; the discrete hyperconvergence is not lower"
        ),
        law!(
            "pro-up-regular",
            "pro:up-regular",
            Lattice,
            l::up_regular,
            "lower topologies on the hyperspace are upper regular"
        ),
        law!("lem-closure", "lem:closure", Lattice, l::closure, "closure of a point A is the set of opens inside A"),
        law!(
            "prop-t0-not-t1",
            "prop:t0-not-t1",
            Lattice,
            l::t0_not_t1,
            "hyperconvergences between p(X,$) and [X,$] are T₀ and not T₁"
        ),
        law!("mesh", "mesh", Small, l::mesh_law, "a set meshes with a principal filter iff it meets the kernel"),
        law!(
            "prop-refine",
            "prop:refine",
            Lattice,
            l::refine,
            "mesh with 𝒪^♮(𝒫), refinement, and comparison of 𝒪^♮ filters agree"
        ),
        law!(
            "ideal-subbase",
            "ideal-subbase",
            Small,
            l::ideal_subbase,
            "ideal subbases, their filter bases and union closures"
        ),
        law!(
            "eq-reducedideal",
            "eq:reducedideal",
            Small,
            l::reduced_ideal_law,
            "the reduced ideal is the set of intersections of members, an ideal subbase"
        ),
        law!(
            "prop-base",
            "prop:base",
            Lattice,
            l::base,
            "Scott limits are witnessed by 𝒪^♮ of interiors of the reduced ideal"
        ),
        law!(
            "pro-adh-lim",
            "pro:adh=lim",
            Lattice,
            l::adh_lim,
            "adherence of an ideal subbase equals the limit of its 𝒪^♮ filter"
        ),
        law!("prop-cover", "prop:cover", Lattice, l::cover, "𝒫 covers U iff U adheres to 𝒫^∪"),
        law!(
            "cor-idealcover",
            "cor:idealcover",
            Lattice,
            l::ideal_cover,
            "for ideal bases all solid hyperconvergences between p(X,$) and [X,$] agree on adherence"
        ),
        law!(
            "example-discrete",
            "example-discrete",
            Discrete,
            l::example_discrete,
            "X does not adhere to the singletons but adheres to their unions"
        ),
        law!(
            "pro-adhalpha",
            "pro:adhalpha",
            Lattice,
            l::adh_alpha,
            "adherence in α(X,$) is being an α-cover, for ∩-closed α"
        ),
        law!(
            "alpha-lindelof",
            "alpha-lindelof",
            Small,
            l::alpha_lindelof,
            "α-Lindelöf numbers against a threshold search; sL(U) is the Lindelöf number"
        ),
        law!(
            "alpha-arens",
            "alpha-arens",
            Small,
            l::alpha_arens,
            "α-Arens numbers against an exhaustive cofinality search"
        ),
        law!(
            "eq-hyperh",
            "eq:hyperH",
            Small,
            l::hyper_h,
            "Hurewicz selections from α-covers agree with selections through adherence"
        ),
        law!(
            "eq-hyperr",
            "eq:hyperR",
            Small,
            l::hyper_r,
            "Rothberger selections from α-covers agree with selections through adherence"
        ),
        law!("eq-alphalind", "eq:alphaLind", Small, l::alpha_lind, "αL(U) equals the tightness of α(X,$) at U"),
        law!(
            "functional-separation",
            "functional-separation",
            Lattice,
            l::functional_separation_law,
            "separation witnesses and failures are genuine"
        ),
        law!(
            "lem-separation",
            "lem:separation",
            Regular,
            t::separation,
            "Scott limits have functionally separated coarser filters recovered from their erected filters"
        ),
        law!(
            "wnbase",
            "Wnbase",
            Transfer,
            t::wn_base,
            "the ladder is a strictly decreasing symmetric bounded base at 0"
        ),
        law!(
            "lem-conv-at-zero",
            "lem:conv-at-zero",
            Transfer,
            t::conv_at_zero,
            "the ladder test agrees with testing open sets of ℝ one by one"
        ),
        law!("w-erected", "W-erected", Transfer, t::w_erected, "bracket regions contain exactly the right functions"),
        law!(
            "wn-erected",
            "Wn-erected",
            Transfer,
            t::wn_erected,
            "levels of the erected filter are the brackets at the ladder"
        ),
        law!(
            "lem-liftsequence",
            "lem:liftsequence",
            Transfer,
            t::lift_sequence,
            "suprema of bracket sequences exist and lie below each bracket"
        ),
        law!(
            "thm-anwn",
            "thm:anWn",
            Transfer,
            t::an_wn,
            "sequences of filters converging to X lift to filters converging to 0"
        ),
        law!(
            "cor-falpha",
            "cor:Falpha",
            Transfer,
            t::f_alpha,
            "erected filters of filters converging to X converge to 0"
        ),
        law!(
            "cor-0-polar",
            "cor:0-polar",
            Transfer,
            t::zero_polar,
            "[α,{0}] is finer than the erected filter and converges to 0"
        ),
        law!(
            "prop-constr-rel",
            "prop:constr-rel",
            Transfer,
            t::constr_rel,
            "the relational reconstruction equals the erected filter at every depth"
        ),
        law!(
            "prop-scaling",
            "prop:scaling",
            Transfer,
            t::scaling,
            "brackets of equal preimages at two windows are rescalings of each other"
        ),
        law!("eq-fw", "eq:FW", Transfer, t::fw, "levels of 𝓕^{𝒩(0)} contain exactly the right functions"),
        law!("eq-fwbelow", "eq:FWbelow", Transfer, t::fw_below, "𝓕^{𝒩(0)} ≤ 𝓕"),
        law!(
            "thm-transfer-compact",
            "thm:transfer-compact",
            Transfer,
            t::transfer_compact,
            "α ≤ [α,𝒩(0)]⁻(W), with equality when α is functionally separated"
        ),
        law!("dual-conv", "dual-conv", Function, f::dual_conv, "the dual convergence agrees with its definition"),
        law!("th-equality", "th:equality", Function, f::equality, "[α,Z] = [X,Z] for p ⊆ α ⊆ κ"),
        law!("eq-3alphas", "eq:3alphas", Function, f::three_alphas, "[α,Z] ≥ T[α,Z] ≥ α(X,Z)"),
    ];
    laws.sort_by_key(|l| l.id);
    laws
}

/// The anchors of all registered laws, sorted.
pub fn anchors() -> Vec<&'static str> {
    let mut a: Vec<&'static str> = registry().iter().map(|l| l.anchor).collect();
    a.sort_unstable();
    a
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: Instance,
    pub violation: Violation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Selected but no instance fell inside the scope.
    Skipped,
    /// Left out on request.
    Excluded,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub id: String,
    pub anchor: String,
    pub grid: Grid,
    pub status: Status,
    pub instances: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawTiming {
    pub id: String,
    pub millis: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub config: ScopeConfig,
    pub laws: Vec<LawReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub timing: Vec<LawTiming>,
}

impl Report {
    /// Every selected law passed; none was skipped.
    pub fn ok(&self) -> bool {
        self.laws.iter().all(|l| matches!(l.status, Status::Pass | Status::Excluded))
    }

    /// The report without wall times.
    pub fn body(&self) -> Report {
        Report { timing: Vec::new(), ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.laws {
            let status = match l.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIPPED",
                Status::Excluded => "excluded",
            };
            out.push_str(&format!("{:<8} {:<24} {:>4}/{:<4} {}\n", status, l.id, l.passes, l.instances, l.anchor));
            for f in &l.failures {
                out.push_str(&format!("         {}\n         instance: {}\n", f.violation.message, f.instance.key()));
            }
        }
        for t in &self.timing {
            out.push_str(&format!("time {:<24} {} ms\n", t.id, t.millis));
        }
        out
    }
}

fn run_instance(law: &LawRecord, instance: &Instance) -> Outcome {
    let case = Case::build(instance)?;
    (law.check)(&case)
}

fn run_law(law: &LawRecord, cfg: &ScopeConfig) -> (LawReport, LawTiming) {
    let start = Instant::now();
    let (instances, mut failures) = match grid_instances(law.grid, cfg) {
        Ok(list) => {
            let failures: Vec<Failure> = list
                .par_iter()
                .filter_map(|inst| {
                    run_instance(law, inst).err().map(|violation| Failure { instance: inst.clone(), violation })
                })
                .collect();
            (list.len(), failures)
        }
        Err(e) => (
            0,
            vec![Failure {
                instance: Instance { space: FiniteSpace::discrete(0).spec(), target: None, depth: None },
                violation: Violation::from(e),
            }],
        ),
    };
    failures.sort_by_cached_key(|f| f.instance.key());
    let status = if !failures.is_empty() {
        Status::Fail
    } else if instances == 0 {
        Status::Skipped
    } else {
        Status::Pass
    };
    let report = LawReport {
        id: law.id.to_string(),
        anchor: law.anchor.to_string(),
        grid: law.grid,
        status,
        instances,
        passes: instances.saturating_sub(failures.len()),
        failures,
    };
    (report, LawTiming { id: law.id.to_string(), millis: start.elapsed().as_millis() })
}

/// Runs the selected laws (all when `only` is empty); laws in `exclude` are
/// listed but not run.
pub fn run_laws(only: &[String], exclude: &[String], cfg: &ScopeConfig) -> Result<Report> {
    let laws = registry();
    for id in only.iter().chain(exclude) {
        if !laws.iter().any(|l| l.id == id) {
            return Err(Error::UnknownLaw(id.clone()));
        }
    }
    let selected: Vec<&LawRecord> =
        laws.iter().filter(|l| only.is_empty() || only.iter().any(|id| id == l.id)).collect();
    let results: Vec<(LawReport, Option<LawTiming>)> = selected
        .par_iter()
        .map(|law| {
            if exclude.iter().any(|id| id == law.id) {
                let report = LawReport {
                    id: law.id.to_string(),
                    anchor: law.anchor.to_string(),
                    grid: law.grid,
                    status: Status::Excluded,
                    instances: 0,
                    passes: 0,
                    failures: Vec::new(),
                };
                (report, None)
            } else {
                let (r, t) = run_law(law, cfg);
                (r, Some(t))
            }
        })
        .collect();
    let (laws, timing): (Vec<LawReport>, Vec<Option<LawTiming>>) = results.into_iter().unzip();
    Ok(Report { schema: 1, config: *cfg, laws, timing: timing.into_iter().flatten().collect() })
}

/// Reruns one law on one serialized instance.
pub fn replay(id: &str, instance: &Instance) -> Result<Outcome> {
    let law = registry().into_iter().find(|l| l.id == id).ok_or_else(|| Error::UnknownLaw(id.to_string()))?;
    Ok(run_instance(&law, instance))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_sorted() {
        let laws = registry();
        assert!(laws.windows(2).all(|w| w[0].id < w[1].id));
        let mut anchors = anchors();
        anchors.dedup();
        assert_eq!(anchors.len(), laws.len());
    }

    #[test]
    fn unknown_law_is_rejected() {
        let err = run_laws(&["deliberately-broken-oracle".into()], &[], &ScopeConfig::default()).unwrap_err();
        assert_eq!(err, Error::UnknownLaw("deliberately-broken-oracle".into()));
    }

    #[test]
    fn grids_respect_the_point_limit() {
        let cfg = ScopeConfig { max_points: Some(2), ..ScopeConfig::default() };
        assert_eq!(grid_instances(Grid::Lattice, &cfg).unwrap().len(), 1 + 4);
        assert_eq!(grid_instances(Grid::Discrete, &cfg).unwrap().len(), 1);
        assert_eq!(grid_instances(Grid::Function, &cfg).unwrap().len(), 3 * (1 + 3));
        let all = grid_instances(Grid::Lattice, &ScopeConfig::default()).unwrap();
        assert_eq!(all.len(), 1 + 4 + 29 + 219);
    }

    #[test]
    fn skipped_laws_are_reported() {
        let cfg = ScopeConfig { max_points: Some(1), ..ScopeConfig::default() };
        let r = run_laws(&["example-discrete".into()], &[], &cfg).unwrap();
        assert_eq!(r.laws[0].status, Status::Skipped);
        assert!(!r.ok());
        let r = run_laws(&["example-discrete".into()], &["example-discrete".into()], &cfg).unwrap();
        assert_eq!(r.laws[0].status, Status::Excluded);
        assert!(r.ok());
    }

    #[test]
    fn transfer_spaces_are_seeded() {
        let a = transfer_spaces(7).unwrap();
        let b = transfer_spaces(7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5 + RANDOM_TRANSFER_SPACES);
    }
}
