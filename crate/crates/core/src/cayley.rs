//! Girth and diameter of Cayley graphs, and the union bound tying girth to word probabilities.
//!
//! Girth is word-theoretic: the least length of a nonempty cyclically reduced
//! (undirected) or positive (directed) word `w` with `w(S) = 1`.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::groups::{GeneratorTuple, Group, GroupElement, GroupSpec};
use crate::probability::{length_bound, ln_union_e, log_union_e_estimate};
use crate::words::{letter_from_rank, Word};

pub const DEFAULT_MAX_LEN: usize = 40;
pub const DEFAULT_ELEMENT_CAP: usize = 10_000_000;
pub const ORACLE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GirthMode {
    Undirected,
    Directed,
}

impl std::str::FromStr for GirthMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "undirected" => Ok(GirthMode::Undirected),
            "directed" => Ok(GirthMode::Directed),
            _ => Err(Error::parse(0, format!("unknown girth mode `{s}`"))),
        }
    }
}

impl std::fmt::Display for GirthMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GirthMode::Undirected => "undirected",
            GirthMode::Directed => "directed",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GirthValue {
    Exact(usize),
    /// No relation of length below this value exists.
    AtLeast(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GirthReport {
    pub mode: GirthMode,
    pub value: GirthValue,
    pub witness: Option<Word>,
    /// `ball_sizes[r]` is the number of elements at distance at most `r`
    /// (out-distance in directed mode) for each radius explored.
    pub ball_sizes: Vec<u64>,
    /// The witness is `x_i^2` for an involution `x_i`, a relation that is
    /// not a cycle under the simple-graph convention.
    pub involution_square: bool,
}

impl GirthReport {
    pub fn girth(&self) -> Option<usize> {
        match self.value {
            GirthValue::Exact(g) => Some(g),
            GirthValue::AtLeast(_) => None,
        }
    }

    fn found(mode: GirthMode, witness: Word, ball_sizes: Vec<u64>) -> Self {
        GirthReport {
            mode,
            value: GirthValue::Exact(witness.len()),
            involution_square: witness.is_square_of_letter(),
            witness: Some(witness),
            ball_sizes,
        }
    }
}

/// Element values of every letter, indexed by rank.
fn letter_values(group: &Group, gens: &GeneratorTuple) -> Vec<GroupElement> {
    (0..2 * gens.k())
        .map(|r| {
            let l = letter_from_rank(r);
            let g = &gens.elems[l.unsigned_abs() as usize - 1];
            if l > 0 {
                g.clone()
            } else {
                group.inv(g)
            }
        })
        .collect()
}

fn check_girth_args(group: &Group, gens: &GeneratorTuple, max_len: usize) -> Result<()> {
    if max_len == 0 {
        return Err(Error::domain("max_len must be at least 1"));
    }
    if gens.k() == 0 {
        return Err(Error::domain("need at least one generator"));
    }
    if gens.elems.iter().any(|g| !group.contains(g)) {
        return Err(Error::domain("generator outside the group"));
    }
    Ok(())
}

type Key = Vec<u8>;

/// `(first, last)` letter ranks of a word, packed.
type Sig = u16;

fn sig(first: usize, last: usize) -> Sig {
    ((first << 8) | last) as Sig
}

fn sig_first(s: Sig) -> usize {
    (s >> 8) as usize
}

fn sig_last(s: Sig) -> usize {
    (s & 0xff) as usize
}

struct Entry {
    elem: GroupElement,
    sigs: Vec<Sig>,
}

/// Elements reached by words of one exact length.
type Layer = HashMap<Key, Entry>;

struct Search<'a> {
    group: &'a Group,
    letters: Vec<GroupElement>,
    mode: GirthMode,
    layers: Vec<Layer>,
    seen: HashSet<Key>,
    ball_sizes: Vec<u64>,
    stored: usize,
    cap: usize,
}

impl<'a> Search<'a> {
    fn new(group: &'a Group, gens: &GeneratorTuple, mode: GirthMode, cap: usize) -> Self {
        let letters = letter_values(group, gens);
        let id = group.identity();
        let key = group.encode(&id);
        let mut layer0 = Layer::new();
        layer0.insert(key.clone(), Entry { elem: id, sigs: Vec::new() });
        Search {
            group,
            letters,
            mode,
            layers: vec![layer0],
            seen: HashSet::from([key]),
            ball_sizes: vec![1],
            stored: 1,
            cap,
        }
    }

    fn usable(&self, rank: usize) -> bool {
        self.mode == GirthMode::Undirected || rank % 2 == 0
    }

    /// Builds the next layer; `false` when the element cap would be exceeded.
    fn grow(&mut self) -> bool {
        let alphabet: Vec<usize> = (0..self.letters.len()).filter(|&a| self.usable(a)).collect();
        let prev = self.layers.last().unwrap();
        let mut stored = self.stored;
        let mut next = Layer::new();
        let mut key = Vec::with_capacity(self.group.encoded_len());
        for entry in prev.values() {
            for &a in &alphabet {
                let sigs: Vec<Sig> = if entry.sigs.is_empty() {
                    vec![sig(a, a)]
                } else {
                    entry
                        .sigs
                        .iter()
                        .filter(|&&s| self.mode == GirthMode::Directed || sig_last(s) != a ^ 1)
                        .map(|&s| sig(sig_first(s), a))
                        .collect()
                };
                if sigs.is_empty() {
                    continue;
                }
                let y = self.group.mul(&entry.elem, &self.letters[a]);
                key.clear();
                self.group.encode_into(&y, &mut key);
                let slot = match next.get_mut(&key) {
                    Some(e) => e,
                    None => {
                        stored += 1;
                        if stored > self.cap {
                            self.stored = stored;
                            return false;
                        }
                        next.entry(key.clone()).or_insert(Entry { elem: y, sigs: Vec::new() })
                    }
                };
                for s in sigs {
                    if !slot.sigs.contains(&s) {
                        slot.sigs.push(s);
                    }
                }
            }
        }
        self.stored = stored;
        for k in next.keys() {
            if !self.seen.contains(k) {
                self.seen.insert(k.clone());
            }
        }
        self.ball_sizes.push(self.seen.len() as u64);
        self.layers.push(next);
        true
    }

    fn radius(&self) -> usize {
        self.layers.len() - 1
    }

    /// Whether some word of length `s` compatible with the surrounding letters
    /// evaluates to `x` (undirected) or `x^-1` (directed).
    ///
    /// In undirected mode the word is `v^-1` for a suffix `v`, so its last
    /// letter must differ from the prefix's last letter and its first letter
    /// from the relation's first letter.
    fn completes(&self, key: &[u8], s: usize, prefix_last: Option<usize>, word_first: Option<usize>) -> bool {
        let Some(entry) = self.layers[s].get(key) else { return false };
        if self.mode == GirthMode::Directed || s == 0 {
            return true;
        }
        entry.sigs.iter().any(|&g| prefix_last.is_none_or(|p| sig_last(g) != p) && word_first.is_none_or(|f| sig_first(g) != f))
    }

    /// Some relation of length `len` exists, given layers up to `⌈len/2⌉`.
    fn has_relation(&self, len: usize) -> bool {
        let r = len.div_ceil(2);
        let other = len - r;
        let group = self.group;
        match self.mode {
            GirthMode::Undirected => self.layers[r].iter().any(|(key, e)| {
                let Some(o) = self.layers[other].get(key) else { return false };
                if other == 0 {
                    return true;
                }
                e.sigs.iter().any(|&a| o.sigs.iter().any(|&b| sig_first(a) != sig_first(b) && sig_last(a) != sig_last(b)))
            }),
            GirthMode::Directed => self.layers[r].values().any(|e| {
                let key = group.encode(&group.inv(&e.elem));
                self.layers[other].contains_key(&key)
            }),
        }
    }

    /// Lexicographically least relation of length `len`, assuming one exists.
    fn witness(&self, len: usize, k: usize) -> Option<Word> {
        let mut ranks = Vec::with_capacity(len);
        let mut failed = HashSet::new();
        for first in (0..self.letters.len()).filter(|&a| self.usable(a)) {
            failed.clear();
            ranks.clear();
            ranks.push(first);
            let x = self.letters[first].clone();
            if self.dfs(len, &x, &mut ranks, &mut failed) {
                let letters = ranks.iter().map(|&r| letter_from_rank(r)).collect();
                return Word::new(letters, k).ok();
            }
        }
        None
    }

    fn dfs(&self, len: usize, x: &GroupElement, ranks: &mut Vec<usize>, failed: &mut HashSet<(Key, usize, usize)>) -> bool {
        let s = len - ranks.len();
        let last = *ranks.last().unwrap();
        let first = ranks[0];
        let target = match self.mode {
            GirthMode::Undirected => x.clone(),
            GirthMode::Directed => self.group.inv(x),
        };
        let key = self.group.encode(&target);
        if s == 0 {
            return self.group.is_identity(x);
        }
        if s <= self.radius() {
            let ok = self.completes(&key, s, Some(last), Some(first));
            if !ok {
                return false;
            }
        } else if failed.contains(&(key.clone(), last, s)) {
            return false;
        }
        for a in (0..self.letters.len()).filter(|&a| self.usable(a)) {
            if self.mode == GirthMode::Undirected && (a == last ^ 1 || (s == 1 && a == first ^ 1)) {
                continue;
            }
            let y = self.group.mul(x, &self.letters[a]);
            ranks.push(a);
            if self.dfs(len, &y, ranks, failed) {
                return true;
            }
            ranks.pop();
        }
        if s > self.radius() {
            failed.insert((key, last, s));
        }
        false
    }
}

/// Girth with the default element cap.
pub fn girth(group: &Group, gens: &GeneratorTuple, mode: GirthMode, max_len: usize) -> Result<GirthReport> {
    girth_with_cap(group, gens, mode, max_len, DEFAULT_ELEMENT_CAP)
}

/// Layered meet-in-the-middle girth search.
///
/// Undirected: layer `r` maps each element to the `(first, last)` letters of
/// the reduced words of length `r` reaching it. A relation of length
/// `2r - 1` or `2r` is `u v` with `|u| = r`, and `e(u) = e(v^-1)` where
/// `v^-1` lies in layer `r - 1` or `r`; the join needs distinct first letters
/// and distinct last letters. Directed: `e(u) = e(v)^-1` over positive words.
pub fn girth_with_cap(group: &Group, gens: &GeneratorTuple, mode: GirthMode, max_len: usize, cap: usize) -> Result<GirthReport> {
    check_girth_args(group, gens, max_len)?;
    let mut search = Search::new(group, gens, mode, cap.max(1));
    for len in 1..=max_len {
        while search.radius() < len.div_ceil(2) {
            if !search.grow() {
                return Err(Error::GirthCapacity {
                    reached: search.stored - 1,
                    checked: len - 1,
                });
            }
        }
        if search.has_relation(len) {
            let w = search
                .witness(len, gens.k())
                .ok_or_else(|| Error::Internal(format!("relation of length {len} detected but not reconstructed")))?;
            return Ok(GirthReport::found(mode, w, search.ball_sizes));
        }
    }
    Ok(GirthReport {
        mode,
        value: GirthValue::AtLeast(max_len + 1),
        witness: None,
        ball_sizes: search.ball_sizes,
        involution_square: false,
    })
}

/// Exhaustive depth-first girth search, for cross-checking [`girth`].
pub fn girth_bruteforce_oracle(group: &Group, gens: &GeneratorTuple, mode: GirthMode, max_len: usize) -> Result<GirthReport> {
    check_girth_args(group, gens, max_len)?;
    let letters = letter_values(group, gens);
    let alphabet: Vec<usize> = (0..letters.len()).filter(|&a| mode == GirthMode::Undirected || a % 2 == 0).collect();
    let mut budget = ORACLE_BUDGET;
    let mut ranks = Vec::new();

    fn go(
        group: &Group,
        letters: &[GroupElement],
        alphabet: &[usize],
        mode: GirthMode,
        len: usize,
        x: &GroupElement,
        ranks: &mut Vec<usize>,
        budget: &mut u64,
    ) -> Result<bool> {
        if ranks.len() == len {
            if *budget == 0 {
                return Err(Error::Capacity("brute-force girth budget exhausted".into()));
            }
            *budget -= 1;
            return Ok(group.is_identity(x));
        }
        for &a in alphabet {
            if mode == GirthMode::Undirected {
                if ranks.last().is_some_and(|&l| l == a ^ 1) {
                    continue;
                }
                if ranks.len() + 1 == len && len > 1 && ranks[0] == a ^ 1 {
                    continue;
                }
            }
            let y = group.mul(x, &letters[a]);
            ranks.push(a);
            if go(group, letters, alphabet, mode, len, &y, ranks, budget)? {
                return Ok(true);
            }
            ranks.pop();
        }
        Ok(false)
    }

    for len in 1..=max_len {
        ranks.clear();
        if go(group, &letters, &alphabet, mode, len, &group.identity(), &mut ranks, &mut budget)? {
            let w = Word::new(ranks.iter().map(|&r| letter_from_rank(r)).collect(), gens.k())?;
            return Ok(GirthReport::found(mode, w, Vec::new()));
        }
    }
    Ok(GirthReport {
        mode,
        value: GirthValue::AtLeast(max_len + 1),
        witness: None,
        ball_sizes: Vec::new(),
        involution_square: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiameterReport {
    pub diameter: usize,
    pub reached: u64,
    pub generates: bool,
    /// Number of elements at each distance from the identity. Cayley graphs
    /// are vertex-transitive, so this is every vertex's distance profile.
    pub histogram: Vec<u64>,
}

/// Breadth-first search over `S ∪ S^-1` from the identity.
pub fn diameter(group: &Group, gens: &GeneratorTuple, cap: u64) -> Result<DiameterReport> {
    let order = group.order();
    if order > cap.into() {
        return Err(Error::Capacity(format!("group order {order} exceeds cap {cap}")));
    }
    let letters = letter_values(group, gens);
    let id = group.identity();
    let mut seen = HashSet::from([group.encode(&id)]);
    let mut frontier = vec![id];
    let mut histogram = vec![1u64];
    let mut key = Vec::with_capacity(group.encoded_len());
    loop {
        let mut next = Vec::new();
        for x in &frontier {
            for a in &letters {
                let y = group.mul(x, a);
                key.clear();
                group.encode_into(&y, &mut key);
                if !seen.contains(&key) {
                    seen.insert(key.clone());
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        histogram.push(next.len() as u64);
        frontier = next;
    }
    let reached = seen.len() as u64;
    Ok(DiameterReport {
        diameter: histogram.len() - 1,
        reached,
        generates: order == reached.into(),
        histogram,
    })
}

/// `Σ_{ℓ=1}^{L} 2k(2k-1)^{ℓ-1} · p(ℓ)`, summed in log space.
pub fn girth_union_bound(k: usize, max_len: usize, p_of_len: impl Fn(usize) -> f64) -> f64 {
    ln_girth_union_bound(k, max_len, |l| p_of_len(l).ln()).exp()
}

/// Natural log of [`girth_union_bound`], taking `ln p(ℓ)` directly.
pub fn ln_girth_union_bound(k: usize, max_len: usize, ln_p_of_len: impl Fn(usize) -> f64) -> f64 {
    let kf = k as f64;
    let terms: Vec<f64> = (1..=max_len)
        .map(|l| (2.0 * kf).ln() + (l as f64 - 1.0) * (2.0 * kf - 1.0).ln() + ln_p_of_len(l))
        .filter(|t| *t > f64::NEG_INFINITY)
        .collect();
    let Some(m) = terms.iter().copied().reduce(f64::max) else {
        return f64::NEG_INFINITY;
    };
    m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnionBoundReport {
    /// `ln` of the union bound with the length bound as `p(ℓ)`, up to `⌊n/c⌋`.
    pub ln_sum: f64,
    pub max_len: usize,
    pub ln_e: f64,
    /// `log_{2k-1} E`.
    pub log_e: f64,
    /// The simplified upper estimate of `log_{2k-1} E`.
    pub log_e_estimate: f64,
}

/// Union bound over lengths `ℓ ≤ n/c`, with the quantity `E` bounding it.
pub fn union_bound_report(spec: &GroupSpec, k: usize, c: f64, eps: f64) -> Result<UnionBoundReport> {
    let q = spec.effective_q().ok_or_else(|| Error::domain("union bound needs a matrix group"))?;
    let ln_order = spec.ln_order();
    let ln_e = ln_union_e(k, spec.n, c, eps, ln_order)?;
    let max_len = (spec.n as f64 / c).floor() as usize;
    let ln_p = (1..=max_len).map(|l| length_bound(spec, l, eps).map(|b| b.ln_bound)).collect::<Result<Vec<_>>>()?;
    Ok(UnionBoundReport {
        ln_sum: ln_girth_union_bound(k, max_len, |l| ln_p[l - 1]),
        max_len,
        ln_e,
        log_e: ln_e / ((2 * k - 1) as f64).ln(),
        log_e_estimate: log_union_e_estimate(k, spec.n, c, eps, q),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Permutation;
    use crate::groups::GroupSpec;
    use crate::words::evaluate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn perms(n: usize, cycles: &[&[&[usize]]]) -> GeneratorTuple {
        GeneratorTuple::new(cycles.iter().map(|c| GroupElement::Perm(Permutation::from_cycles(n, c).unwrap())).collect())
    }

    #[test]
    fn five_cycle() {
        let g = Group::new(GroupSpec::sym(5)).unwrap();
        let s = perms(5, &[&[&[1, 2, 3, 4, 5]]]);
        for mode in [GirthMode::Undirected, GirthMode::Directed] {
            let r = girth(&g, &s, mode, 40).unwrap();
            assert_eq!(r.girth(), Some(5));
            assert_eq!(r.witness.unwrap().letters(), &[1; 5]);
        }
    }

    #[test]
    fn involution_gives_square() {
        let g = Group::new(GroupSpec::sym(3)).unwrap();
        let s = perms(3, &[&[&[1, 2]], &[&[1, 2, 3]]]);
        let r = girth(&g, &s, GirthMode::Undirected, 40).unwrap();
        assert_eq!(r.girth(), Some(2));
        assert_eq!(r.witness.as_ref().unwrap().letters(), &[1, 1]);
        assert!(r.involution_square);
        let d = diameter(&g, &s, 1000).unwrap();
        assert_eq!((d.diameter, d.generates, d.reached), (2, true, 6));
        assert_eq!(d.histogram, vec![1, 3, 2]);
    }

    #[test]
    fn identity_generator() {
        let g = Group::new(GroupSpec::sym(3)).unwrap();
        let s = GeneratorTuple::new(vec![g.identity()]);
        for mode in [GirthMode::Undirected, GirthMode::Directed] {
            assert_eq!(girth(&g, &s, mode, 5).unwrap().girth(), Some(1));
        }
        let d = diameter(&g, &s, 100).unwrap();
        assert_eq!((d.reached, d.generates, d.diameter), (1, false, 0));
    }

    #[test]
    fn klein_four_is_complete() {
        let g = Group::new(GroupSpec::sym(4)).unwrap();
        let s = perms(4, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]], &[&[1, 4], &[2, 3]]]);
        let d = diameter(&g, &s, 100).unwrap();
        assert_eq!((d.diameter, d.reached, d.generates), (1, 4, false));
    }

    #[test]
    fn three_cycle_directed_oracle() {
        let g = Group::new(GroupSpec::sym(3)).unwrap();
        let s = perms(3, &[&[&[1, 2, 3]]]);
        assert_eq!(girth_bruteforce_oracle(&g, &s, GirthMode::Directed, 10).unwrap().girth(), Some(3));
    }

    #[test]
    fn lower_bound_certificate() {
        let g = Group::new(GroupSpec::sym(7)).unwrap();
        let s = perms(7, &[&[&[1, 2, 3, 4, 5, 6, 7]]]);
        let r = girth(&g, &s, GirthMode::Undirected, 4).unwrap();
        assert_eq!(r.value, GirthValue::AtLeast(5));
        assert!(r.witness.is_none());
    }

    #[test]
    fn capacity_reports_lower_bound() {
        let g = Group::new(GroupSpec::sym(12)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = g.sample_tuple(2, &mut rng).unwrap();
        match girth_with_cap(&g, &s, GirthMode::Undirected, 40, 200) {
            Err(Error::GirthCapacity { checked, .. }) => assert!(checked >= 3),
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn agrees_with_oracle_and_witness_is_least() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for spec in [GroupSpec::sym(5), GroupSpec::sl(2, 3), GroupSpec::sl(2, 5)] {
            let g = Group::new(spec).unwrap();
            for k in [1, 2] {
                for _ in 0..10 {
                    let s = g.sample_tuple(k, &mut rng).unwrap();
                    for mode in [GirthMode::Undirected, GirthMode::Directed] {
                        let fast = girth(&g, &s, mode, 12).unwrap();
                        let slow = girth_bruteforce_oracle(&g, &s, mode, 12).unwrap();
                        assert_eq!(fast.value, slow.value, "{spec} {mode}");
                        assert_eq!(fast.witness, slow.witness);
                        if let Some(w) = &fast.witness {
                            assert!(g.is_identity(&evaluate(&g, w, &s).unwrap()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ball_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = Group::new(GroupSpec::sym(7)).unwrap();
        for _ in 0..10 {
            let s = g.sample_tuple(2, &mut rng).unwrap();
            let r = girth(&g, &s, GirthMode::Undirected, 40).unwrap();
            let gv = r.girth().unwrap();
            let free = |r: usize| 1 + (1..=r).map(|i| 4 * 3u64.pow(i as u32 - 1)).sum::<u64>();
            if let Some(dev) = (0..r.ball_sizes.len()).find(|&i| r.ball_sizes[i] != free(i)) {
                assert!(2 * dev - 1 <= gv && gv <= 2 * dev, "dev={dev} girth={gv}");
            }
        }
    }

    #[test]
    fn extra_generator_never_increases_girth() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = Group::new(GroupSpec::sym(6)).unwrap();
        for _ in 0..10 {
            let s = g.sample_tuple(3, &mut rng).unwrap();
            let sub = GeneratorTuple::new(s.elems[..2].to_vec());
            let a = girth(&g, &sub, GirthMode::Undirected, 30).unwrap().girth().unwrap();
            let b = girth(&g, &s, GirthMode::Undirected, 30).unwrap().girth().unwrap();
            assert!(b <= a);
        }
    }

    #[test]
    fn diameter_degree_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = Group::new(GroupSpec::sl(2, 7)).unwrap();
        for _ in 0..10 {
            let s = g.sample_tuple(2, &mut rng).unwrap();
            let d = diameter(&g, &s, 10_000).unwrap();
            if d.generates {
                assert!(d.diameter as f64 >= (336f64.ln() / 4f64.ln()).ceil());
            }
            assert_eq!(d.histogram.iter().sum::<u64>(), d.reached);
        }
        assert!(diameter(&Group::new(GroupSpec::sym(9)).unwrap(), &perms(9, &[&[&[1, 2]]]), 1000).is_err());
    }

    #[test]
    fn union_bound_values() {
        assert_eq!(girth_union_bound(2, 2, |_| 0.25), 16.0 * 0.25);
        assert_eq!(girth_union_bound(3, 0, |_| 0.5), 0.0);
        assert!((girth_union_bound(2, 3, |l| 1.0 / (l as f64)) - (4.0 + 6.0 + 36.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn union_report_e() {
        let spec = GroupSpec::sp(14, 2);
        let r = union_bound_report(&spec, 2, 14.0, 2.0).unwrap();
        assert!((r.ln_e - (6f64.ln() - spec.ln_order() / 4.0)).abs() < 1e-9);
        assert!(r.log_e <= r.log_e_estimate);
        assert_eq!(r.max_len, 1);
    }
}
