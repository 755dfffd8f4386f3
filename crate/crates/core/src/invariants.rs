//! Conjugation invariants of 2x2 matrices and generator tuples.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg;
use crate::mat2::Mat2;
use crate::rep::{increasing_subsequences, Mode, RepTuple, Word};

/// `tr(A)^2 det B + tr(B)^2 det A + tr(AB)^2 - tr A tr B tr(AB) - 4 det A det B`.
///
/// Vanishes exactly when `A` and `B` share an eigenvector over the algebraic
/// closure.
pub fn delta2(a: &Mat2, b: &Mat2) -> FieldElement {
    let spec = a.spec();
    let (ta, tb, tab) = (a.trace(), b.trace(), (a * b).trace());
    let (da, db) = (a.det(), b.det());
    ta.square() * &db + tb.square() * &da + tab.square()
        - &ta * &tb * &tab
        - spec.embed_int(4) * &da * &db
}

/// `tr(ABC) - tr(ACB)`.
pub fn tau3(a: &Mat2, b: &Mat2, c: &Mat2) -> FieldElement {
    (&(a * b) * c).trace() - (&(a * c) * b).trace()
}

/// The same quantity written purely in traces of words of length at most three:
/// `2 tr(ABC) - tr A tr(BC) - tr B tr(CA) - tr C tr(AB) + tr A tr B tr C`.
pub fn tau3_trace_form(a: &Mat2, b: &Mat2, c: &Mat2) -> FieldElement {
    let spec = a.spec();
    let (ta, tb, tc) = (a.trace(), b.trace(), c.trace());
    spec.embed_int(2) * (&(a * b) * c).trace()
        - &ta * (b * c).trace()
        - &tb * (c * a).trace()
        - &tc * (a * b).trace()
        + &ta * &tb * &tc
}

/// Determinant of the 4x4 matrix whose rows are the entries
/// `(a11, a12, a21, a22)` of the arguments, in argument order.
pub fn delta4(a1: &Mat2, a2: &Mat2, a3: &Mat2, a4: &Mat2) -> FieldElement {
    let rows: Vec<linalg::Vector> = [a1, a2, a3, a4].iter().map(|m| m.to_vector()).collect();
    linalg::det(a1.spec(), &rows)
}

/// Trace of the image of a word; the empty word gives `tr I = 2`.
pub fn trace_word(t: &RepTuple, w: &Word) -> Result<FieldElement> {
    Ok(t.eval(w)?.trace())
}

/// Generator determinants and traces of all strictly increasing generator
/// products, the latter in length-then-lexicographic order of index sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantVector {
    pub dets: Vec<FieldElement>,
    pub traces: Vec<(Vec<usize>, FieldElement)>,
}

impl InvariantVector {
    pub fn trace_of(&self, indices: &[usize]) -> Option<&FieldElement> {
        self.traces.iter().find(|(k, _)| k == indices).map(|(_, v)| v)
    }
}

/// In group mode the generator list is first extended by the inverses,
/// `(A_1, ..., A_m, A_1^-1, ..., A_m^-1)`.
pub fn invariant_vector(t: &RepTuple) -> Result<InvariantVector> {
    let work = match t.mode() {
        Mode::Monoid => t.clone(),
        Mode::Group => {
            let mut gens = t.gens().to_vec();
            for (i, g) in t.gens().iter().enumerate() {
                gens.push(g.inverse().ok_or(Error::NonInvertibleGenerator(i + 1))?);
            }
            RepTuple::monoid(gens)?
        }
    };
    let dets = work.gens().iter().map(Mat2::det).collect();
    let traces = increasing_subsequences(work.len())
        .into_iter()
        .map(|idx| {
            let tr = work.subsequence_product(&idx).trace();
            (idx, tr)
        })
        .collect();
    Ok(InvariantVector { dets, traces })
}

/// `det A = (tr A tr A^3 - tr(A^2)^2) / m(A)` from the three power traces.
pub fn det_from_traces(t1: &FieldElement, t2: &FieldElement, t3: &FieldElement) -> Result<FieldElement> {
    let spec = t1.spec();
    let m = spec.embed_int(2) * t2 - t1.square();
    if m.is_zero() {
        return Err(Error::VanishingM);
    }
    (t1 * t3 - t2.square()).checked_div(&m)
}

/// The unique `X` in `span{I, A}` with prescribed `tr X` and `tr(AX)`,
/// through the inverse Gram matrix `(1/m) [[tr A^2, -tr A], [-tr A, 2]]`.
pub fn reconstruct_from_traces(a: &Mat2, tr_x: &FieldElement, tr_ax: &FieldElement) -> Result<Mat2> {
    let spec = a.spec();
    let m = a.m();
    let minv = m.inv().map_err(|_| Error::VanishingM)?;
    let ta = a.trace();
    let ta2 = (a * a).trace();
    let lambda = &minv * (&ta2 * tr_x - &ta * tr_ax);
    let mu = &minv * (spec.embed_int(2) * tr_ax - &ta * tr_x);
    Ok(&Mat2::scalar(lambda) + &a.scale(&mu))
}

/// `tr(A^k)` for `k = 0..=n` by `t_k = tr A t_{k-1} - det A t_{k-2}`.
pub fn power_traces(a: &Mat2, n: usize) -> Vec<FieldElement> {
    let spec = a.spec();
    let (t, d) = (a.trace(), a.det());
    let mut out = vec![spec.embed_int(2), t.clone()];
    while out.len() <= n {
        let k = out.len();
        let next = &t * &out[k - 1] - &d * &out[k - 2];
        out.push(next);
    }
    out.truncate(n + 1);
    out
}

/// `m(A^n)` from the closed formula
/// `m(A) [sum_k det^k tr(A^{n-2k-1}) (+ det^{(n-1)/2} if n odd)]^2`.
pub fn m_power_closed(a: &Mat2, n: u32) -> FieldElement {
    assert!(n >= 1, "exponent must be positive");
    let spec = a.spec();
    let det = a.det();
    let traces = power_traces(a, n as usize);
    let n = n as usize;
    let last = if n % 2 == 1 { (n as isize - 3) / 2 } else { (n as isize - 2) / 2 };
    let mut factor = spec.zero();
    for k in 0..=last {
        let k = k as usize;
        factor = factor + det.pow(k as u32) * &traces[n - 2 * k - 1];
    }
    if n % 2 == 1 {
        factor = factor + det.pow(((n - 1) / 2) as u32);
    }
    a.m() * factor.square()
}
