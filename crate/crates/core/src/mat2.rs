//! The 2x2 matrix core.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg;

/// A 2x2 matrix over a single exact field, stored row-major as
/// `(a11, a12, a21, a22)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    e: [FieldElement; 4],
}

/// Trace, determinant and `m = tr^2 - 4 det`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharData {
    pub trace: FieldElement,
    pub det: FieldElement,
    pub m: FieldElement,
}

/// Which entry made the companion basis possible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `a12 != 0`: basis `{e2, A e2}`.
    B,
    /// `a21 != 0`: basis `{e1, A e1}`.
    C,
    /// `a11 != a22`: basis `{e1 + e2, A (e1 + e2)}`.
    AMinusD,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::B => "b",
            Branch::C => "c",
            Branch::AMinusD => "a-d",
        }
    }
}

/// `P^-1 A P = [[0, -det A], [1, tr A]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompanionCert {
    pub p: Mat2,
    pub companion: Mat2,
    pub branch: Branch,
}

impl Mat2 {
    pub fn new(e: [FieldElement; 4]) -> Result<Self> {
        let spec = e[0].spec();
        if let Some(bad) = e.iter().find(|x| x.spec() != spec) {
            return Err(Error::FieldMismatch {
                expected: spec,
                found: bad.spec(),
            });
        }
        Ok(Mat2 { e })
    }

    pub fn from_ints(spec: FieldSpec, rows: [[i64; 2]; 2]) -> Self {
        Mat2 {
            e: [
                spec.embed_int(rows[0][0]),
                spec.embed_int(rows[0][1]),
                spec.embed_int(rows[1][0]),
                spec.embed_int(rows[1][1]),
            ],
        }
    }

    pub fn identity(spec: FieldSpec) -> Self {
        Self::scalar(spec.one())
    }

    pub fn zero(spec: FieldSpec) -> Self {
        Self::scalar(spec.zero())
    }

    pub fn scalar(c: FieldElement) -> Self {
        let z = c.spec().zero();
        Mat2 {
            e: [c.clone(), z.clone(), z, c],
        }
    }

    /// The companion matrix `[[0, -det], [1, tr]]`.
    pub fn companion(trace: &FieldElement, det: &FieldElement) -> Self {
        let spec = trace.spec();
        Mat2 {
            e: [spec.zero(), -det, spec.one(), trace.clone()],
        }
    }

    /// Builds a matrix from a vector in `(a11, a12, a21, a22)` order.
    pub fn from_vector(v: &[FieldElement]) -> Self {
        Mat2 {
            e: [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()],
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.e[0].spec()
    }

    /// Entry in row `i`, column `j` (0-based).
    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.e[2 * i + j]
    }

    pub fn entries(&self) -> &[FieldElement; 4] {
        &self.e
    }

    pub fn to_vector(&self) -> Vec<FieldElement> {
        self.e.to_vec()
    }

    pub fn trace(&self) -> FieldElement {
        &self.e[0] + &self.e[3]
    }

    pub fn det(&self) -> FieldElement {
        &self.e[0] * &self.e[3] - &self.e[1] * &self.e[2]
    }

    /// `tr^2 - 4 det`, the discriminant of the characteristic polynomial.
    pub fn m(&self) -> FieldElement {
        let four = self.spec().embed_int(4);
        self.trace().square() - &four * &self.det()
    }

    pub fn char_data(&self) -> CharData {
        let trace = self.trace();
        let det = self.det();
        let m = trace.square() - self.spec().embed_int(4) * &det;
        CharData { trace, det, m }
    }

    pub fn is_scalar(&self) -> bool {
        self.e[1].is_zero() && self.e[2].is_zero() && self.e[0] == self.e[3]
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(FieldElement::is_zero)
    }

    pub fn scale(&self, c: &FieldElement) -> Mat2 {
        Mat2 {
            e: self.e.clone().map(|x| c * &x),
        }
    }

    pub fn adjugate(&self) -> Mat2 {
        Mat2 {
            e: [self.e[3].clone(), -&self.e[1], -&self.e[2], self.e[0].clone()],
        }
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det().inv().ok()?;
        Some(self.adjugate().scale(&d))
    }

    pub fn pow(&self, n: u32) -> Mat2 {
        let mut acc = Mat2::identity(self.spec());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn commutes_with(&self, other: &Mat2) -> bool {
        self * other == other * self
    }

    /// The trace-free part `A - (tr A / 2) I`.
    pub fn eta(&self) -> Result<Mat2> {
        if self.spec().is_char_two() {
            return Err(Error::CharTwo);
        }
        let half = self.spec().embed_int(2).inv()?;
        Ok(self - &Mat2::scalar(&self.trace() * &half))
    }

    /// Conjugates a non-scalar matrix into companion form, choosing the basis
    /// vector from the first of `a12`, `a21`, `a11 - a22` that is nonzero.
    pub fn companion_normalize(&self) -> Result<CompanionCert> {
        let spec = self.spec();
        let (zero, one) = (spec.zero(), spec.one());
        let (branch, v) = if !self.e[1].is_zero() {
            (Branch::B, [zero, one])
        } else if !self.e[2].is_zero() {
            (Branch::C, [one, zero])
        } else if self.e[0] != self.e[3] {
            (Branch::AMinusD, [one.clone(), one])
        } else {
            return Err(Error::ScalarInput);
        };
        let av = self.apply(&v);
        let [v0, v1] = v;
        let [w0, w1] = av;
        let p = Mat2 { e: [v0, w0, v1, w1] };
        let cd = self.char_data();
        Ok(CompanionCert {
            p,
            companion: Mat2::companion(&cd.trace, &cd.det),
            branch,
        })
    }

    /// `{I, A}`; the kernel of `X -> AX - XA` is checked to be exactly their span.
    pub fn commutant_basis(&self) -> Result<Vec<Mat2>> {
        if self.is_scalar() {
            return Err(Error::ScalarInput);
        }
        let ker = linalg::kernel(self.spec(), &self.commutator_map(), 4);
        debug_assert_eq!(ker.len(), 2);
        Ok(vec![Mat2::identity(self.spec()), self.clone()])
    }

    /// Whether `Y = AX - XA` has a solution `X`, decided by solving the
    /// linear system.
    pub fn commutator_image_test(&self, y: &Mat2) -> Result<bool> {
        if self.is_scalar() {
            return Err(Error::ScalarInput);
        }
        Ok(linalg::solve(self.spec(), &self.commutator_map(), &y.to_vector()).is_some())
    }

    /// Matrix of `X -> AX - XA` on vectorized `X`.
    pub fn commutator_map(&self) -> Vec<linalg::Vector> {
        let spec = self.spec();
        let columns: Vec<Vec<FieldElement>> = (0..4)
            .map(|k| {
                let mut unit = vec![spec.zero(); 4];
                unit[k] = spec.one();
                let ek = Mat2::from_vector(&unit);
                (&(self * &ek) - &(&ek * self)).to_vector()
            })
            .collect();
        (0..4).map(|r| (0..4).map(|k| columns[k][r].clone()).collect()).collect()
    }

    fn apply(&self, v: &[FieldElement; 2]) -> [FieldElement; 2] {
        [
            &self.e[0] * &v[0] + &self.e[1] * &v[1],
            &self.e[2] * &v[0] + &self.e[3] * &v[1],
        ]
    }

    /// Lines spanned by eigenvectors defined over the base field.
    pub fn eigenlines(&self) -> Vec<[FieldElement; 2]> {
        let spec = self.spec();
        if self.is_scalar() {
            return vec![[spec.one(), spec.zero()], [spec.zero(), spec.one()]];
        }
        let cd = self.char_data();
        let eigenvalues: Vec<FieldElement> = if spec.is_char_two() {
            // F_2 is the only prime field of characteristic 2.
            spec.elements()
                .expect("prime field")
                .into_iter()
                .filter(|x| (x.square() - &cd.trace * x + &cd.det).is_zero())
                .collect()
        } else {
            let Some(root) = cd.m.sqrt() else {
                return Vec::new();
            };
            let two = spec.embed_int(2);
            [root.clone(), -&root]
                .iter()
                .map(|s| (&cd.trace + s).checked_div(&two).expect("char != 2"))
                .collect()
        };
        let mut lines: Vec<[FieldElement; 2]> = Vec::new();
        for lambda in eigenvalues {
            let shifted = self - &Mat2::scalar(lambda);
            // A nonzero row (x, y) of A - lambda I gives the kernel vector (-y, x).
            let row = if !shifted.e[0].is_zero() || !shifted.e[1].is_zero() { 0 } else { 1 };
            let v = [-shifted.at(row, 1), shifted.at(row, 0).clone()];
            if !lines.iter().any(|w| same_line(w, &v)) {
                lines.push(v);
            }
        }
        lines
    }

    pub fn fixes_line(&self, v: &[FieldElement; 2]) -> bool {
        let w = self.apply(v);
        same_line(v, &w) || (w[0].is_zero() && w[1].is_zero())
    }
}

fn same_line(v: &[FieldElement; 2], w: &[FieldElement; 2]) -> bool {
    (&v[0] * &w[1] - &v[1] * &w[0]).is_zero()
}

/// `P^-1 A P`.
pub fn conjugate(p: &Mat2, a: &Mat2) -> Result<Mat2> {
    let inv = p.inverse().ok_or(Error::SingularP)?;
    Ok(&(&inv * a) * p)
}

impl<'a> Mul<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        let (a, b) = (&self.e, &rhs.e);
        Mat2 {
            e: [
                &a[0] * &b[0] + &a[1] * &b[2],
                &a[0] * &b[1] + &a[1] * &b[3],
                &a[2] * &b[0] + &a[3] * &b[2],
                &a[2] * &b[1] + &a[3] * &b[3],
            ],
        }
    }
}

impl<'a> Add<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn add(self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            e: std::array::from_fn(|i| &self.e[i] + &rhs.e[i]),
        }
    }
}

impl<'a> Sub<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            e: std::array::from_fn(|i| &self.e[i] - &rhs.e[i]),
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.e;
        write!(f, "[[{},{}],[{},{}]]", e[0], e[1], e[2], e[3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn m(spec: FieldSpec, rows: [[i64; 2]; 2]) -> Mat2 {
        Mat2::from_ints(spec, rows)
    }

    #[test]
    fn characteristic_data() {
        let t = Q.embed_int(5);
        let d = Q.embed_int(-3);
        let cd = Mat2::companion(&t, &d).char_data();
        assert_eq!(cd.trace, t);
        assert_eq!(cd.det, d);
        assert_eq!(cd.m, Q.embed_int(25 + 12));

        let cd = m(Q, [[1, 1], [0, 1]]).char_data();
        assert_eq!((cd.trace, cd.det, cd.m), (Q.embed_int(2), Q.one(), Q.zero()));
        let cd = m(Q, [[1, 0], [0, 2]]).char_data();
        assert_eq!((cd.trace, cd.det, cd.m), (Q.embed_int(3), Q.embed_int(2), Q.one()));
    }

    #[test]
    fn eta_examples() {
        assert_eq!(m(Q, [[1, 1], [0, 1]]).eta().unwrap(), m(Q, [[0, 1], [0, 0]]));
        assert!(Mat2::scalar(Q.embed_int(7)).eta().unwrap().is_zero());
        assert_eq!(m(FieldSpec::Prime(2), [[1, 1], [0, 1]]).eta(), Err(Error::CharTwo));
    }

    #[test]
    fn companion_examples() {
        let a = m(Q, [[1, 1], [0, 1]]);
        let cert = a.companion_normalize().unwrap();
        assert_eq!(cert.branch, Branch::B);
        assert_eq!(cert.p, m(Q, [[0, 1], [1, 1]]));
        assert_eq!(cert.companion, m(Q, [[0, -1], [1, 2]]));
        assert_eq!(&cert.p * &cert.companion, &a * &cert.p);

        let a = m(Q, [[0, 0], [1, 3]]);
        let cert = a.companion_normalize().unwrap();
        assert_eq!(cert.branch, Branch::C);
        assert_eq!(cert.p, Mat2::identity(Q));
        assert_eq!(cert.companion, a);

        let a = m(Q, [[2, 0], [0, 5]]);
        let cert = a.companion_normalize().unwrap();
        assert_eq!(cert.branch, Branch::AMinusD);
        assert_eq!(conjugate(&cert.p, &a).unwrap(), cert.companion);

        assert_eq!(
            Mat2::scalar(Q.embed_int(2)).companion_normalize(),
            Err(Error::ScalarInput)
        );
    }

    #[test]
    fn commutant_examples() {
        let a = m(Q, [[0, -1], [1, 2]]);
        assert_eq!(a.commutant_basis().unwrap(), vec![Mat2::identity(Q), a.clone()]);
        assert_eq!(linalg::kernel(Q, &a.commutator_map(), 4).len(), 2);

        let d = m(Q, [[1, 0], [0, 2]]);
        let basis = d.commutant_basis().unwrap();
        // diag(5,7) = 3 I + 2 diag(1,2)
        let target = m(Q, [[5, 0], [0, 7]]);
        assert_eq!(&basis[0].scale(&Q.embed_int(3)) + &basis[1].scale(&Q.embed_int(2)), target);
        assert_eq!(Mat2::identity(Q).commutant_basis(), Err(Error::ScalarInput));
    }

    #[test]
    fn commutator_image_examples() {
        let f3 = FieldSpec::Prime(3);
        let a = m(f3, [[0, -1], [1, 0]]);
        let y = m(f3, [[1, 0], [0, -1]]);
        assert!(a.commutator_image_test(&y).unwrap());
        assert!(!a.commutator_image_test(&Mat2::identity(f3)).unwrap());
        assert!(a.commutator_image_test(&Mat2::zero(f3)).unwrap());
        assert_eq!(
            Mat2::identity(f3).commutator_image_test(&y),
            Err(Error::ScalarInput)
        );
    }

    #[test]
    fn conjugate_examples() {
        let a = m(Q, [[1, 0], [0, 2]]);
        assert_eq!(conjugate(&Mat2::identity(Q), &a).unwrap(), a);
        assert_eq!(conjugate(&m(Q, [[0, 1], [1, 0]]), &a).unwrap(), m(Q, [[2, 0], [0, 1]]));
        assert_eq!(conjugate(&m(Q, [[1, 2], [2, 4]]), &a), Err(Error::SingularP));
    }

    #[test]
    fn eigenlines_are_fixed() {
        for p in [2u64, 3, 5] {
            let spec = FieldSpec::Prime(p);
            let els = spec.elements().unwrap();
            for a in &els {
                for b in &els {
                    for c in &els {
                        for d in &els {
                            let x = Mat2::new([a.clone(), b.clone(), c.clone(), d.clone()]).unwrap();
                            let lines = x.eigenlines();
                            for l in &lines {
                                assert!(x.fixes_line(l), "{x} {l:?}");
                            }
                            // brute force count of fixed projective points
                            let mut fixed = 0;
                            let mut pts = vec![[spec.one(), spec.zero()]];
                            pts.extend(els.iter().map(|t| [t.clone(), spec.one()]));
                            for pt in &pts {
                                if x.fixes_line(pt) {
                                    fixed += 1;
                                }
                            }
                            if !x.is_scalar() {
                                assert_eq!(fixed, lines.len(), "{x}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_fields_rejected() {
        let r = Mat2::new([Q.one(), Q.one(), FieldSpec::Prime(3).one(), Q.one()]);
        assert!(matches!(r, Err(Error::FieldMismatch { .. })));
    }
}
