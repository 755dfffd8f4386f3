//! Molds: the unital subalgebra spanned by a representation's image, and the
//! six-way classification of 2-dimensional representations over a field.

use std::fmt;

use crate::error::Result;
use crate::field::FieldElement;
use crate::invariants::{delta2, tau3};
use crate::linalg;
use crate::mat2::Mat2;
use crate::rep::{Mode, RepTuple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoldLabel {
    Air,
    Borel,
    SemiSimple,
    Unipotent,
    UnipotentF2,
    Scalar,
}

impl MoldLabel {
    pub const ALL: [MoldLabel; 6] = [
        MoldLabel::Air,
        MoldLabel::Borel,
        MoldLabel::SemiSimple,
        MoldLabel::Unipotent,
        MoldLabel::UnipotentF2,
        MoldLabel::Scalar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoldLabel::Air => "air",
            MoldLabel::Borel => "borel",
            MoldLabel::SemiSimple => "semisimple",
            MoldLabel::Unipotent => "unipotent",
            MoldLabel::UnipotentF2 => "unipotent_f2",
            MoldLabel::Scalar => "scalar",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.name() == name)
    }
}

impl fmt::Display for MoldLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Echelonized basis of a unital subalgebra of the 2x2 matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraBasis {
    pub basis: Vec<Mat2>,
}

impl SubalgebraBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &Mat2) -> bool {
        let mut rows: Vec<linalg::Vector> = self.basis.iter().map(Mat2::to_vector).collect();
        rows.push(x.to_vector());
        linalg::rank(&rows) == self.dim()
    }
}

/// Unital algebra generated by the generator images: the fixpoint of
/// `S -> span(S ∪ S·S)` starting from `{I} ∪ gens`.
pub fn span_closure(t: &RepTuple) -> SubalgebraBasis {
    let spec = t.spec();
    let mut rows: Vec<linalg::Vector> = std::iter::once(Mat2::identity(spec))
        .chain(t.gens().iter().cloned())
        .map(|m| m.to_vector())
        .collect();
    let mut basis = linalg::row_basis(&rows);
    loop {
        let mats: Vec<Mat2> = basis.iter().map(|v| Mat2::from_vector(v)).collect();
        rows = basis.clone();
        for x in &mats {
            for y in &mats {
                rows.push((x * y).to_vector());
            }
        }
        let next = linalg::row_basis(&rows);
        if next.len() == basis.len() {
            break;
        }
        basis = next;
    }
    SubalgebraBasis {
        basis: basis.iter().map(|v| Mat2::from_vector(v)).collect(),
    }
}

/// Whether every three word images are linearly dependent, i.e. the mold has
/// dimension at most 2.
pub fn rank_le2_test(t: &RepTuple) -> bool {
    span_closure(t).dim() <= 2
}

fn label_for(basis: &SubalgebraBasis, char_two: bool) -> MoldLabel {
    match basis.dim() {
        4 => MoldLabel::Air,
        3 => MoldLabel::Borel,
        1 => MoldLabel::Scalar,
        2 => {
            // In characteristic 2, m = tr^2, so this is the "some trace is nonzero" test.
            if basis.basis.iter().any(|x| !x.m().is_zero()) {
                MoldLabel::SemiSimple
            } else if char_two {
                MoldLabel::UnipotentF2
            } else {
                MoldLabel::Unipotent
            }
        }
        d => unreachable!("subalgebra of dimension {d}"),
    }
}

pub fn classify(t: &RepTuple) -> MoldLabel {
    classify_with_basis(t).0
}

pub fn classify_with_basis(t: &RepTuple) -> (MoldLabel, SubalgebraBasis) {
    let basis = span_closure(t);
    (label_for(&basis, t.spec().is_char_two()), basis)
}

/// Which discriminant certified absolute irreducibility (1-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AirWitness {
    /// `Δ(A_i, A_j) != 0`.
    Pair(usize, usize),
    /// `τ(A_i, A_j, A_k) != 0`.
    Triple(usize, usize, usize),
    /// `Δ(A_i A_j, A_k) != 0`.
    ProductPair(usize, usize, usize),
}

/// First pair with nonzero `Δ`, else first triple with nonzero `τ`.
pub fn air_witness(t: &RepTuple) -> Option<AirWitness> {
    let g = t.gens();
    let n = g.len();
    for i in 0..n {
        for j in i + 1..n {
            if !delta2(&g[i], &g[j]).is_zero() {
                return Some(AirWitness::Pair(i + 1, j + 1));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !tau3(&g[i], &g[j], &g[k]).is_zero() {
                    return Some(AirWitness::Triple(i + 1, j + 1, k + 1));
                }
            }
        }
    }
    None
}

/// The invertible-generator variant: pairs by `Δ`, triples by `Δ(A_i A_j, A_k)`.
pub fn air_witness_product_variant(t: &RepTuple) -> Option<AirWitness> {
    let g = t.gens();
    let n = g.len();
    for i in 0..n {
        for j in i + 1..n {
            if !delta2(&g[i], &g[j]).is_zero() {
                return Some(AirWitness::Pair(i + 1, j + 1));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let prod = &g[i] * &g[j];
            for k in j + 1..n {
                if !delta2(&prod, &g[k]).is_zero() {
                    return Some(AirWitness::ProductPair(i + 1, j + 1, k + 1));
                }
            }
        }
    }
    None
}

/// Absolute irreducibility decided from discriminants of generators alone.
/// In group mode the product variant is evaluated as well.
pub fn air_by_discriminants(t: &RepTuple) -> Result<bool> {
    let air = air_witness(t).is_some();
    if t.mode() == Mode::Group {
        let variant = air_witness_product_variant(t).is_some();
        debug_assert_eq!(air, variant, "discriminant criteria disagree");
    }
    Ok(air)
}

/// A line fixed by every generator, searched among eigenlines of the first
/// non-scalar generator.
pub fn invariant_line(t: &RepTuple) -> Option<[FieldElement; 2]> {
    let spec = t.spec();
    let Some(pivot) = t.gens().iter().find(|g| !g.is_scalar()) else {
        return Some([spec.one(), spec.zero()]);
    };
    pivot
        .eigenlines()
        .into_iter()
        .find(|line| t.gens().iter().all(|g| g.fixes_line(line)))
}
