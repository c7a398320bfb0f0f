//! Vector trajectories under a word's letter maps.
//!
//! For a word `w = w_ℓ ⋯ w_1`, a generator tuple and a base vector `v`, the
//! trajectory is `v^0 = v`, `v^j = w_j(g) · v^{j-1}`. If `w(g) = 1` then
//! `v^ℓ = v^0`, so a relation forces every trajectory to close up; this
//! module measures how often trajectories become linearly dependent and
//! compares those frequencies with the closed-form per-trajectory bounds.

use rayon::prelude::*;
use rand::Rng;

use crate::algebra::matrix::{self, EchelonSpan, Matrix, Vector};
use crate::error::{Error, Result};
use crate::groups::{GeneratorTuple, Group, GroupElement, GroupSpec};
use crate::harness::seed::substream;
use crate::probability::FamilyCase;
use crate::words::Word;

const BASE_RETRY_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub points: Vec<Vector>,
    /// First step whose point lies in the span of everything before it.
    pub dependent_at: Option<usize>,
    /// Number of points that fell in the span of what preceded them.
    pub dependent_points: usize,
}

impl Trajectory {
    pub fn base(&self) -> &Vector {
        &self.points[0]
    }

    pub fn is_dependent(&self) -> bool {
        self.dependent_at.is_some()
    }
}

/// Matrices substituted for each letter, indexed by `letter_rank`.
struct LetterMaps {
    maps: Vec<Option<Matrix>>,
}

impl LetterMaps {
    fn new(group: &Group, w: &Word, gens: &GeneratorTuple) -> Result<Self> {
        if w.k() != gens.k() {
            return Err(Error::domain(format!("word over {} generators, tuple of {}", w.k(), gens.k())));
        }
        let mut maps = vec![None; 2 * gens.k()];
        for &l in w.letters() {
            let rank = crate::words::letter_rank(l);
            if maps[rank].is_some() {
                continue;
            }
            let g = &gens.elems[l.unsigned_abs() as usize - 1];
            let g = if l > 0 { g.clone() } else { group.inv(g) };
            let GroupElement::Mat(m) = g else {
                return Err(Error::domain("trajectories need a matrix group"));
            };
            maps[rank] = Some(m);
        }
        Ok(LetterMaps { maps })
    }
}

fn trace(group: &Group, w: &Word, maps: &LetterMaps, base: &[crate::algebra::FieldElement], span: &mut EchelonSpan) -> Result<Trajectory> {
    let f = group.field().ok_or_else(|| Error::domain("trajectories need a matrix group"))?;
    if base.iter().all(|x| x.is_zero()) {
        return Err(Error::domain("base vector must be nonzero"));
    }
    if base.len() != group.spec().n {
        return Err(Error::domain("base vector has the wrong dimension"));
    }
    let mut points = Vec::with_capacity(w.len() + 1);
    let mut dependent_at = None;
    let mut dependent_points = 0;
    let mut cur = base.to_vec();
    for j in 0..=w.len() {
        if j > 0 {
            let m = maps.maps[crate::words::letter_rank(w.letters()[j - 1])].as_ref().unwrap();
            cur = matrix::apply(f, m, &cur)?;
        }
        if !span.insert(f, &cur)? {
            dependent_points += 1;
            dependent_at.get_or_insert(j);
        }
        points.push(cur.clone());
    }
    Ok(Trajectory {
        points,
        dependent_at,
        dependent_points,
    })
}

/// The trajectory of `base`, with dependence measured among its own points.
pub fn run_trajectory(group: &Group, w: &Word, gens: &GeneratorTuple, base: &[crate::algebra::FieldElement]) -> Result<Trajectory> {
    let mut span = EchelonSpan::new(group.spec().n);
    run_trajectory_within(group, w, gens, base, &mut span)
}

/// The trajectory of `base` measured against (and then added to) the accumulated span `prior`.
pub fn run_trajectory_within(
    group: &Group,
    w: &Word,
    gens: &GeneratorTuple,
    base: &[crate::algebra::FieldElement],
    prior: &mut EchelonSpan,
) -> Result<Trajectory> {
    if w.is_empty() || !w.is_reduced() {
        return Err(Error::domain("trajectories need a nonempty reduced word"));
    }
    let maps = LetterMaps::new(group, w, gens)?;
    trace(group, w, &maps, base, prior)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepBound {
    /// Per-step bound for step `j` of the first trajectory.
    Step(usize),
    /// Sum of the per-step bounds over the steps of trajectory `i`.
    Summed(usize),
    /// Closed form bounding the dependence probability of trajectory `i`.
    Trajectory(usize),
}

/// Dependence bounds. Linear case (`GL`, `SL`): step `j` is bounded by
/// `q^j / (q^n - q^{j-1})` and trajectory `i` by `q/(q-1) · q^{iℓ}/(q^n - q^{iℓ-1})`.
/// Classical case: `Q^j / (Q^{n-j} - Q^{j-1})` and
/// `Q/(Q-1) · Q^{iℓ}/(Q^{n-iℓ} - Q^{iℓ-1})`.
pub fn step_bound(case: FamilyCase, q: u32, n: usize, len: usize, which: StepBound) -> Result<f64> {
    if q < 2 || n == 0 || len == 0 {
        return Err(Error::domain("need q >= 2, n >= 1, len >= 1"));
    }
    let qf = q as f64;
    let pw = |e: i64| qf.powi(e as i32);
    let n = n as i64;
    let single = |s: i64| -> Result<f64> {
        let denom = match case {
            FamilyCase::Linear => pw(n) - pw(s - 1),
            FamilyCase::Classical => pw(n - s) - pw(s - 1),
        };
        if denom <= 0.0 {
            return Err(Error::domain(format!("nonpositive denominator at step {s}")));
        }
        Ok(pw(s) / denom)
    };
    let l = len as i64;
    match which {
        StepBound::Step(j) if j >= 1 => single(j as i64),
        StepBound::Summed(i) if i >= 1 => (1..=l).map(|j| single((i as i64 - 1) * l + j)).sum(),
        StepBound::Trajectory(i) if i >= 1 => {
            let s = i as i64 * l;
            Ok(qf / (qf - 1.0) * single(s)?)
        }
        _ => Err(Error::domain("step and trajectory indices start at 1")),
    }
}

/// Per-trial dependence record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    /// `dependent[i-1]` for each trajectory that could be started.
    pub dependent: Vec<bool>,
    pub dependent_points: usize,
    pub total_points: usize,
    /// Rank of the accumulated span at the end of the trial.
    pub rank: usize,
    pub relation_holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryRow {
    pub i: usize,
    /// Trials in which trajectory `i` was started.
    pub attempted: u64,
    /// Trials in which every earlier trajectory was independent.
    pub reached: u64,
    /// Dependent outcomes among `reached`.
    pub dependent: u64,
    /// Dependent outcomes among `attempted`.
    pub dependent_any: u64,
    pub bound: Option<f64>,
}

impl TrajectoryRow {
    /// Conditional dependence frequency (given earlier independence).
    pub fn empirical(&self) -> Option<f64> {
        (self.reached > 0).then(|| self.dependent as f64 / self.reached as f64)
    }

    /// Binomial standard error of a frequency whose true value equals the bound.
    pub fn bound_std_err(&self) -> Option<f64> {
        let b = self.bound?.min(1.0);
        (self.reached > 0).then(|| (b * (1.0 - b) / self.reached as f64).sqrt())
    }

    /// Whether the empirical frequency stays within `bound + sigmas · std_err`.
    pub fn dominated(&self, sigmas: f64) -> Option<bool> {
        Some(self.empirical()? <= self.bound? + sigmas * self.bound_std_err()?)
    }
}

#[derive(Clone, Debug)]
pub struct TrajectoryExperiment {
    pub spec: GroupSpec,
    pub word: Word,
    pub trials: u64,
    pub seed: u64,
    pub m: usize,
    pub case: FamilyCase,
    pub rows: Vec<TrajectoryRow>,
    pub outcomes: Vec<TrialOutcome>,
}

/// Default number of trajectories per trial: `⌊n/ℓ⌋` (linear) or `⌊n/(2ℓ)⌋` (classical).
pub fn default_trajectory_count(case: FamilyCase, n: usize, len: usize) -> usize {
    match case {
        FamilyCase::Linear => n / len,
        FamilyCase::Classical => n / (2 * len),
    }
}

fn check_dimensions(case: FamilyCase, n: usize, len: usize) -> Result<()> {
    match case {
        FamilyCase::Linear if 2 * len >= n => Err(Error::domain(format!("need 2*len < n (len={len}, n={n})"))),
        FamilyCase::Classical if n <= 4 * len => Err(Error::domain(format!("need n > 4*len (len={len}, n={n})"))),
        _ => Ok(()),
    }
}

fn random_base_outside<R: Rng + ?Sized>(group: &Group, span: &EchelonSpan, rng: &mut R) -> Result<Vector> {
    let f = group.field().unwrap();
    (0..BASE_RETRY_CAP)
        .map(|_| matrix::random_vector(f, group.spec().n, rng))
        .find(|v| !span.contains(f, v).unwrap_or(true))
        .ok_or_else(|| Error::Internal("base vector rejection exceeded its retry cap".into()))
}

fn run_trial(group: &Group, w: &Word, m: usize, seed: u64, trial: u64) -> Result<TrialOutcome> {
    let mut rng = substream(seed, trial);
    let gens = group.sample_tuple(w.k(), &mut rng)?;
    let maps = LetterMaps::new(group, w, &gens)?;
    let relation_holds = group.is_identity(&crate::words::evaluate(group, w, &gens)?);
    let mut span = EchelonSpan::new(group.spec().n);
    let mut out = TrialOutcome {
        dependent: Vec::with_capacity(m),
        dependent_points: 0,
        total_points: 0,
        rank: 0,
        relation_holds,
    };
    for _ in 0..m {
        if span.is_full() {
            break;
        }
        let base = random_base_outside(group, &span, &mut rng)?;
        let t = trace(group, w, &maps, &base, &mut span)?;
        out.dependent.push(t.is_dependent());
        out.dependent_points += t.dependent_points;
        out.total_points += t.points.len();
    }
    out.rank = span.rank();
    Ok(out)
}

/// Runs `trials` independent trials; trial `t` draws from substream `t` of `seed`.
pub fn dependence_experiment(group: &Group, w: &Word, trials: u64, seed: u64, m: Option<usize>) -> Result<TrajectoryExperiment> {
    let spec = *group.spec();
    let case = FamilyCase::of(spec.family)?;
    if w.is_empty() || !w.is_reduced() {
        return Err(Error::domain("trajectories need a nonempty reduced word"));
    }
    if trials == 0 {
        return Err(Error::domain("trials must be at least 1"));
    }
    let len = w.len();
    check_dimensions(case, spec.n, len)?;
    let m = m.unwrap_or_else(|| default_trajectory_count(case, spec.n, len)).max(1);
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(group, w, m, seed, t))
        .collect::<Result<Vec<_>>>()?;
    let q = spec.effective_q().unwrap();
    let rows = (1..=m)
        .map(|i| {
            let mut row = TrajectoryRow {
                i,
                attempted: 0,
                reached: 0,
                dependent: 0,
                dependent_any: 0,
                bound: step_bound(case, q, spec.n, len, StepBound::Trajectory(i)).ok(),
            };
            for o in &outcomes {
                let Some(&dep) = o.dependent.get(i - 1) else { continue };
                row.attempted += 1;
                row.dependent_any += u64::from(dep);
                if o.dependent[..i - 1].iter().all(|d| !d) {
                    row.reached += 1;
                    row.dependent += u64::from(dep);
                }
            }
            row
        })
        .collect();
    Ok(TrajectoryExperiment {
        spec,
        word: w.clone(),
        trials,
        seed,
        m,
        case,
        rows,
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldElement;
    use crate::words::parse_word;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn bound_examples() {
        let lin = FamilyCase::Linear;
        assert!(close(step_bound(lin, 2, 8, 3, StepBound::Step(1)).unwrap(), 2.0 / 255.0));
        let summed = step_bound(lin, 2, 8, 3, StepBound::Summed(1)).unwrap();
        assert!(close(summed, 2.0 / 255.0 + 4.0 / 254.0 + 8.0 / 252.0));
        let closed = step_bound(lin, 2, 8, 3, StepBound::Trajectory(1)).unwrap();
        assert!(close(closed, 16.0 / 252.0));
        assert!(summed <= closed);
        assert!(close(step_bound(FamilyCase::Classical, 3, 8, 2, StepBound::Step(1)).unwrap(), 3.0 / 2186.0));
        assert!(step_bound(lin, 2, 4, 3, StepBound::Trajectory(2)).is_err());
        assert!(step_bound(lin, 2, 8, 3, StepBound::Step(0)).is_err());
    }

    #[test]
    fn summed_never_exceeds_closed_form() {
        for case in [FamilyCase::Linear, FamilyCase::Classical] {
            for q in [2, 3, 4, 5] {
                for n in 8..14 {
                    for len in 2..4 {
                        for i in 1..=n / (2 * len) {
                            let (Ok(s), Ok(c)) = (
                                step_bound(case, q, n, len, StepBound::Summed(i)),
                                step_bound(case, q, n, len, StepBound::Trajectory(i)),
                            ) else {
                                continue;
                            };
                            assert!(s <= c * (1.0 + 1e-12), "{case:?} q={q} n={n} len={len} i={i}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn single_letter_trajectory() {
        let g = Group::new(GroupSpec::sl(3, 5)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let gens = g.sample_tuple(1, &mut rng).unwrap();
        let v = vec![FieldElement(1), FieldElement(2), FieldElement(0)];
        let t = run_trajectory(&g, &parse_word("x1", 1).unwrap(), &gens, &v).unwrap();
        assert_eq!(t.points, vec![v.clone(), g.act(&gens.elems[0], &v).unwrap()]);
        assert!(run_trajectory(&g, &parse_word("x1", 1).unwrap(), &gens, &[FieldElement(0); 3]).is_err());
    }

    #[test]
    fn trajectory_shape_and_closure() {
        let g = Group::new(GroupSpec::sl(2, 3)).unwrap();
        let w = parse_word("x1 x2 x1^-1 x2^-1", 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut closed = 0;
        for _ in 0..300 {
            let gens = g.sample_tuple(2, &mut rng).unwrap();
            let v = matrix::random_vector(g.field().unwrap(), 2, &mut rng);
            if v.iter().all(|x| x.is_zero()) {
                continue;
            }
            let t = run_trajectory(&g, &w, &gens, &v).unwrap();
            assert_eq!(t.points.len(), 5);
            if g.is_identity(&crate::words::evaluate(&g, &w, &gens).unwrap()) {
                assert_eq!(t.points[4], t.points[0]);
                closed += 1;
            }
        }
        assert!(closed > 0);
    }

    #[test]
    fn dimension_preconditions() {
        let g = Group::new(GroupSpec::sl(6, 2)).unwrap();
        let err = dependence_experiment(&g, &parse_word("x1 x2 x1", 2).unwrap(), 10, 1, None).unwrap_err();
        assert!(err.to_string().contains("2*len < n"));
        let sp = Group::new(GroupSpec::sp(8, 2)).unwrap();
        assert!(dependence_experiment(&sp, &parse_word("x1 x2", 2).unwrap(), 10, 1, None).is_err());
        let s = Group::new(GroupSpec::sym(8)).unwrap();
        assert!(dependence_experiment(&s, &parse_word("x1 x2", 2).unwrap(), 10, 1, None).is_err());
    }

    #[test]
    fn bookkeeping_matches_rref() {
        // rank of the accumulated span = points - dependent points, recomputed from scratch
        let g = Group::new(GroupSpec::sl(8, 2)).unwrap();
        let w = parse_word("x1 x2", 2).unwrap();
        let f = g.field().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let gens = g.sample_tuple(2, &mut rng).unwrap();
            let mut span = EchelonSpan::new(8);
            let mut all = Vec::new();
            let mut dep = 0;
            for _ in 0..4 {
                if span.is_full() {
                    break;
                }
                let base = random_base_outside(&g, &span, &mut rng).unwrap();
                let t = run_trajectory_within(&g, &w, &gens, &base, &mut span).unwrap();
                dep += t.dependent_points;
                all.extend(t.points);
            }
            let rank = matrix::rref(f, &all).unwrap().len();
            assert_eq!(rank, all.len() - dep);
            assert_eq!(rank, span.rank());
        }
    }

    #[test]
    fn experiment_is_deterministic_and_consistent() {
        let g = Group::new(GroupSpec::sl(8, 2)).unwrap();
        let w = parse_word("x1 x2 x1", 2).unwrap();
        let a = dependence_experiment(&g, &w, 2000, 3, None).unwrap();
        let b = dependence_experiment(&g, &w, 2000, 3, None).unwrap();
        assert_eq!(a.rows, b.rows);
        assert_eq!(a.m, 2);
        for o in &a.outcomes {
            assert_eq!(o.rank, o.total_points - o.dependent_points);
        }
        assert_eq!(a.rows[0].attempted, 2000);
        assert_eq!(a.rows[0].reached, 2000);
        assert!(a.rows[0].dominated(3.0).unwrap());
    }

    #[test]
    fn symplectic_points_are_isotropic() {
        let g = Group::new(GroupSpec::sp(10, 3)).unwrap();
        let form = g.form().unwrap();
        let f = g.field().unwrap();
        let w = parse_word("x1 x2^-1", 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let gens = g.sample_tuple(2, &mut rng).unwrap();
            let base = random_base_outside(&g, &EchelonSpan::new(10), &mut rng).unwrap();
            let t = run_trajectory(&g, &w, &gens, &base).unwrap();
            for p in &t.points {
                assert!(form.eval(f, p, p).unwrap().is_zero());
            }
        }
        let exp = dependence_experiment(&g, &w, 500, 9, None).unwrap();
        assert_eq!(exp.m, 2);
        assert!(exp.rows[0].dominated(3.0).unwrap());
    }
}
