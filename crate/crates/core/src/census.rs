//! Exhaustive enumeration of representations of free monoids and groups of
//! rank `m` over `F_q`, stratified by mold, with PGL_2 orbit counting.
//!
//! Tuples are encoded as index vectors into an alphabet of matrices (all of
//! `M_2(F_q)` or all of `GL_2(F_q)`), ordered lexicographically with the
//! first generator most significant. Conjugation by each element of
//! `PGL_2(F_q)` is tabulated once on the alphabet, so the canonical orbit
//! representative (the lexicographically least conjugate) and the stabilizer
//! order of a tuple cost `|PGL_2|` table lookups.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::invariants::{invariant_vector, InvariantVector};
use crate::mat2::{self, Mat2};
use crate::mold::{classify, MoldLabel};
use crate::parallel::{map_reduce, Execution};
use crate::rep::{Mode, RepTuple};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CensusKey {
    pub q: u64,
    pub m: usize,
    pub mode: Mode,
}

impl CensusKey {
    pub fn new(q: u64, m: usize, mode: Mode) -> Result<Self> {
        FieldSpec::prime(q)?;
        if m == 0 {
            return Err(Error::EmptyTuple);
        }
        Ok(CensusKey { q, m, mode })
    }

    pub fn monoid(q: u64, m: usize) -> Result<Self> {
        Self::new(q, m, Mode::Monoid)
    }

    pub fn group(q: u64, m: usize) -> Result<Self> {
        Self::new(q, m, Mode::Group)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.q)
    }

    /// `|PGL_2(F_q)| = q^3 - q`.
    pub fn pgl2_order(&self) -> u64 {
        self.q.pow(3) - self.q
    }

    /// `|GL_2(F_q)| = (q^2 - 1)(q^2 - q)`.
    pub fn gl2_order(&self) -> u64 {
        (self.q.pow(2) - 1) * (self.q.pow(2) - self.q)
    }

    /// `q^{4m}` for monoids, `|GL_2(F_q)|^m` for groups.
    pub fn tuple_count(&self) -> u128 {
        let base = match self.mode {
            Mode::Monoid => (self.q as u128).pow(4),
            Mode::Group => self.gl2_order() as u128,
        };
        base.pow(self.m as u32)
    }
}

impl fmt::Display for CensusKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} m={} mode={}", self.q, self.m, self.mode.name())
    }
}

pub type LabelCounts = BTreeMap<MoldLabel, u64>;

fn zero_counts() -> LabelCounts {
    MoldLabel::ALL.iter().map(|&l| (l, 0)).collect()
}

/// Per-mold point counts, and orbit counts when requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumCounts {
    pub key: CensusKey,
    pub points: LabelCounts,
    pub orbits: Option<LabelCounts>,
    pub total: u64,
}

/// Orbit-level facts gathered alongside the counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitStats {
    /// Sum of orbit sizes per label; must reproduce the point counts.
    pub orbit_points: LabelCounts,
    /// Histogram of air orbit sizes.
    pub air_orbit_sizes: BTreeMap<u64, u64>,
    /// Distinct invariant vectors on the semi-simple stratum.
    pub ss_invariant_classes: u64,
    /// Orbits carrying two invariant vectors plus invariant vectors shared by
    /// two orbits.
    pub ss_mismatches: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCensus {
    pub counts: StratumCounts,
    pub stats: OrbitStats,
}

#[derive(Debug, Clone, Copy)]
pub struct CensusConfig {
    pub budget: u64,
    pub execution: Execution,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            budget: DEFAULT_BUDGET,
            execution: Execution::default(),
        }
    }
}

/// Matrices of the enumeration alphabet with conjugation tables.
pub struct Census {
    key: CensusKey,
    alphabet: Vec<Mat2>,
    /// `conj[g][i]` is the alphabet index of `P_g^-1 A_i P_g`.
    conj: Vec<Vec<u32>>,
}

/// `GL_2(F_q)` modulo scalars, each class scaled so its first nonzero entry is 1.
pub fn pgl2(spec: FieldSpec) -> Vec<Mat2> {
    all_matrices(spec)
        .into_iter()
        .filter(|p| !p.det().is_zero())
        .filter(|p| p.entries().iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_one()))
        .collect()
}

/// All `q^4` matrices in lexicographic order of `(a11, a12, a21, a22)`.
pub fn all_matrices(spec: FieldSpec) -> Vec<Mat2> {
    let els = spec.elements().expect("prime field");
    let mut out = Vec::with_capacity(els.len().pow(4));
    for a in &els {
        for b in &els {
            for c in &els {
                for d in &els {
                    out.push(Mat2::from_vector(&[a.clone(), b.clone(), c.clone(), d.clone()]));
                }
            }
        }
    }
    out
}

fn full_index(m: &Mat2, q: u64) -> usize {
    m.entries()
        .iter()
        .fold(0u64, |acc, x| acc * q + x.residue().expect("prime field")) as usize
}

impl Census {
    pub fn new(key: CensusKey, budget: u64) -> Result<Self> {
        let needed = key.tuple_count();
        if needed > budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let spec = key.spec();
        let full = all_matrices(spec);
        let alphabet: Vec<Mat2> = match key.mode {
            Mode::Monoid => full,
            Mode::Group => full.into_iter().filter(|a| !a.det().is_zero()).collect(),
        };
        let mut position = vec![u32::MAX; (key.q as usize).pow(4)];
        for (i, a) in alphabet.iter().enumerate() {
            position[full_index(a, key.q)] = i as u32;
        }
        let conj = pgl2(spec)
            .iter()
            .map(|p| {
                alphabet
                    .iter()
                    .map(|a| {
                        let c = mat2::conjugate(p, a).expect("invertible");
                        position[full_index(&c, key.q)]
                    })
                    .collect()
            })
            .collect();
        Ok(Census { key, alphabet, conj })
    }

    pub fn key(&self) -> CensusKey {
        self.key
    }

    pub fn alphabet(&self) -> &[Mat2] {
        &self.alphabet
    }

    pub fn pgl2_len(&self) -> usize {
        self.conj.len()
    }

    /// Digits of the `n`-th tuple, first generator most significant.
    pub fn tuple_indices(&self, mut n: u64) -> Vec<u32> {
        let base = self.alphabet.len() as u64;
        let mut digits = vec![0u32; self.key.m];
        for d in digits.iter_mut().rev() {
            *d = (n % base) as u32;
            n /= base;
        }
        digits
    }

    pub fn tuple(&self, idx: &[u32]) -> RepTuple {
        let gens = idx.iter().map(|&i| self.alphabet[i as usize].clone()).collect();
        RepTuple::new(gens, self.key.mode).expect("alphabet matches mode")
    }

    /// The conjugate of `idx` under the `g`-th element of PGL_2.
    pub fn act(&self, g: usize, idx: &[u32]) -> Vec<u32> {
        idx.iter().map(|&i| self.conj[g][i as usize]).collect()
    }

    /// Lexicographically least conjugate.
    pub fn canonical(&self, idx: &[u32]) -> Vec<u32> {
        let mut best = idx.to_vec();
        let mut image = vec![0u32; idx.len()];
        for table in &self.conj {
            for (slot, &i) in image.iter_mut().zip(idx) {
                *slot = table[i as usize];
            }
            if image < best {
                best.copy_from_slice(&image);
            }
        }
        best
    }

    /// `Some(stabilizer order)` when `idx` is its own canonical representative.
    pub fn representative_stabilizer(&self, idx: &[u32]) -> Option<u64> {
        let mut stab = 0;
        for table in &self.conj {
            let mut ord = std::cmp::Ordering::Equal;
            for &i in idx {
                let j = table[i as usize];
                ord = j.cmp(&i);
                if ord != std::cmp::Ordering::Equal {
                    break;
                }
            }
            match ord {
                std::cmp::Ordering::Less => return None,
                std::cmp::Ordering::Equal => stab += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
        Some(stab)
    }

    fn shard_len(&self) -> u64 {
        (self.alphabet.len() as u64).pow(self.key.m as u32 - 1)
    }

    pub fn points(&self, exec: Execution) -> StratumCounts {
        let shard = self.shard_len();
        let points = map_reduce(
            exec,
            self.alphabet.len(),
            zero_counts(),
            |s| {
                let mut counts = zero_counts();
                for n in s as u64 * shard..(s as u64 + 1) * shard {
                    let t = self.tuple(&self.tuple_indices(n));
                    *counts.get_mut(&classify(&t)).unwrap() += 1;
                }
                counts
            },
            merge_counts,
        );
        StratumCounts {
            key: self.key,
            total: points.values().sum(),
            points,
            orbits: None,
        }
    }

    pub fn orbits(&self, exec: Execution) -> OrbitCensus {
        let shard = self.shard_len();
        let pgl = self.pgl2_len() as u64;
        let acc = map_reduce(
            exec,
            self.alphabet.len(),
            OrbitAcc::default(),
            |s| {
                let mut acc = OrbitAcc::default();
                for n in s as u64 * shard..(s as u64 + 1) * shard {
                    let idx = self.tuple_indices(n);
                    let t = self.tuple(&idx);
                    let label = classify(&t);
                    *acc.points.entry(label).or_default() += 1;
                    if let Some(stab) = self.representative_stabilizer(&idx) {
                        let size = pgl / stab;
                        *acc.orbits.entry(label).or_default() += 1;
                        *acc.orbit_points.entry(label).or_default() += size;
                        if label == MoldLabel::Air {
                            *acc.air_sizes.entry(size).or_default() += 1;
                        }
                    }
                    if label == MoldLabel::SemiSimple {
                        let iv = invariant_vector(&t).expect("alphabet matches mode");
                        acc.record_ss(self.canonical(&idx), iv);
                    }
                }
                acc
            },
            OrbitAcc::merge,
        );
        let filled = |m: BTreeMap<MoldLabel, u64>| {
            let mut c = zero_counts();
            c.extend(m);
            c
        };
        let points = filled(acc.points);
        OrbitCensus {
            counts: StratumCounts {
                key: self.key,
                total: points.values().sum(),
                points,
                orbits: Some(filled(acc.orbits)),
            },
            stats: OrbitStats {
                orbit_points: filled(acc.orbit_points),
                air_orbit_sizes: acc.air_sizes,
                ss_invariant_classes: acc.iv_to_rep.len() as u64,
                ss_mismatches: acc.mismatches,
            },
        }
    }
}

fn merge_counts(mut a: LabelCounts, b: LabelCounts) -> LabelCounts {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

#[derive(Debug, Clone, Default)]
struct OrbitAcc {
    points: BTreeMap<MoldLabel, u64>,
    orbits: BTreeMap<MoldLabel, u64>,
    orbit_points: BTreeMap<MoldLabel, u64>,
    air_sizes: BTreeMap<u64, u64>,
    rep_to_iv: HashMap<Vec<u32>, InvariantVector>,
    iv_to_rep: HashMap<InvariantVector, Vec<u32>>,
    mismatches: u64,
}

impl OrbitAcc {
    fn record_ss(&mut self, rep: Vec<u32>, iv: InvariantVector) {
        match self.rep_to_iv.get(&rep) {
            Some(seen) if *seen != iv => self.mismatches += 1,
            Some(_) => {}
            None => {
                self.rep_to_iv.insert(rep.clone(), iv.clone());
            }
        }
        match self.iv_to_rep.get(&iv) {
            Some(seen) if *seen != rep => self.mismatches += 1,
            Some(_) => {}
            None => {
                self.iv_to_rep.insert(iv, rep);
            }
        }
    }

    fn merge(mut self, other: OrbitAcc) -> OrbitAcc {
        for (src, dst) in [
            (other.points, &mut self.points),
            (other.orbits, &mut self.orbits),
            (other.orbit_points, &mut self.orbit_points),
        ] {
            for (k, v) in src {
                *dst.entry(k).or_default() += v;
            }
        }
        for (k, v) in other.air_sizes {
            *self.air_sizes.entry(k).or_default() += v;
        }
        self.mismatches += other.mismatches;
        for (rep, iv) in other.rep_to_iv {
            self.record_ss(rep, iv);
        }
        // record_ss above already inserted iv -> rep for every orbit of `other`;
        // the remaining entries only add conflicts between orbits.
        for (iv, rep) in other.iv_to_rep {
            match self.iv_to_rep.get(&iv) {
                Some(seen) if *seen != rep => self.mismatches += 1,
                _ => {}
            }
        }
        self
    }
}

pub fn stratum_census(key: CensusKey) -> Result<StratumCounts> {
    stratum_census_with(key, &CensusConfig::default())
}

pub fn stratum_census_with(key: CensusKey, config: &CensusConfig) -> Result<StratumCounts> {
    Ok(Census::new(key, config.budget)?.points(config.execution))
}

pub fn orbit_census(key: CensusKey) -> Result<StratumCounts> {
    Ok(orbit_census_detailed(key, &CensusConfig::default())?.counts)
}

pub fn orbit_census_detailed(key: CensusKey, config: &CensusConfig) -> Result<OrbitCensus> {
    Ok(Census::new(key, config.budget)?.orbits(config.execution))
}

/// One structural check of a census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub source: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub key: CensusKey,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Number of unipotent orbits predicted for the free monoid of rank `m`:
/// `q^m (q^m - 1) / (q - 1)`.
pub fn expected_unipotent_orbits(q: u64, m: usize) -> u64 {
    let qm = q.pow(m as u32);
    qm * (qm - 1) / (q - 1)
}

pub fn consistency_report(key: CensusKey) -> Result<Report> {
    consistency_report_with(key, &CensusConfig::default())
}

pub fn consistency_report_with(key: CensusKey, config: &CensusConfig) -> Result<Report> {
    let oc = orbit_census_detailed(key, config)?;
    Ok(report_from(&oc))
}

pub fn report_from(oc: &OrbitCensus) -> Report {
    let key = oc.counts.key;
    let points = &oc.counts.points;
    let orbits = oc.counts.orbits.as_ref().expect("orbit census");
    let stats = &oc.stats;
    let pgl = key.pgl2_order();
    let mut checks = Vec::new();

    let expected = key.tuple_count();
    checks.push(Check {
        name: "partition",
        source: "rational points of the representation variety are the disjoint union of the six mold strata",
        passed: oc.counts.total as u128 == expected,
        detail: format!("sum of strata {} vs {}", oc.counts.total, expected),
    });

    checks.push(Check {
        name: "orbit_partition",
        source: "each PGL_2 orbit is one equivalence class of representations",
        passed: stats.orbit_points == *points,
        detail: format!("orbit sizes sum to the point count on {} labels", MoldLabel::ALL.len()),
    });

    let air_points = points[&MoldLabel::Air];
    let non_free: u64 = stats
        .air_orbit_sizes
        .iter()
        .filter(|(&size, _)| size != pgl)
        .map(|(_, &n)| n)
        .sum();
    checks.push(Check {
        name: "air_free_action",
        source: "the air locus is a PGL_2-principal fibre bundle over its quotient",
        passed: non_free == 0 && air_points.is_multiple_of(pgl),
        detail: format!(
            "{} air orbits, {} not of size {}, air points mod {} = {}",
            orbits[&MoldLabel::Air],
            non_free,
            pgl,
            pgl,
            air_points % pgl
        ),
    });

    let ss_orbits = orbits[&MoldLabel::SemiSimple];
    checks.push(Check {
        name: "semisimple_trace_equivalence",
        source: "semi-simple representations are equivalent iff their traces agree",
        passed: stats.ss_mismatches == 0 && stats.ss_invariant_classes == ss_orbits,
        detail: format!(
            "{} orbits, {} invariant vectors, {} mismatches",
            ss_orbits, stats.ss_invariant_classes, stats.ss_mismatches
        ),
    });

    checks.push(Check {
        name: "scalar_orbits_trivial",
        source: "PGL_n acts trivially on scalar representations",
        passed: orbits[&MoldLabel::Scalar] == points[&MoldLabel::Scalar],
        detail: format!(
            "{} scalar orbits, {} scalar points",
            orbits[&MoldLabel::Scalar],
            points[&MoldLabel::Scalar]
        ),
    });

    let (wrong, absent) = if key.q == 2 {
        (MoldLabel::Unipotent, "unipotent")
    } else {
        (MoldLabel::UnipotentF2, "unipotent_f2")
    };
    checks.push(Check {
        name: "unipotent_characteristic",
        source: "unipotent molds over F_2 occur only in characteristic 2, unipotent molds only outside it",
        passed: points[&wrong] == 0,
        detail: format!("{} points labelled {absent}", points[&wrong]),
    });

    if key.q % 2 == 1 && key.mode == Mode::Monoid {
        let want = expected_unipotent_orbits(key.q, key.m);
        checks.push(Check {
            name: "unipotent_orbit_count",
            source: "unipotent representations of the free monoid are parametrized by a character and a projective derivation class",
            passed: orbits[&MoldLabel::Unipotent] == want,
            detail: format!(
                "{} orbits vs q^m(q^m-1)/(q-1) = {}",
                orbits[&MoldLabel::Unipotent],
                want
            ),
        });
    }

    Report { key, checks }
}
