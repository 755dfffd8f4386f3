//! Conjugacy deciders with certificates and the canonical coordinates of the
//! semi-simple, unipotent, unipotent-over-F_2 and scalar strata.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::invariants::invariant_vector;
use crate::linalg;
use crate::mat2::Mat2;
use crate::mold::{classify, MoldLabel};
use crate::rep::{increasing_subsequences, Mode, RepTuple, Word};

fn check_compatible(t1: &RepTuple, t2: &RepTuple) -> Result<()> {
    if t1.len() != t2.len() {
        return Err(Error::Incompatible("different numbers of generators"));
    }
    if t1.spec() != t2.spec() {
        return Err(Error::FieldMismatch {
            expected: t1.spec(),
            found: t2.spec(),
        });
    }
    if t1.mode() != t2.mode() {
        return Err(Error::Incompatible("different modes"));
    }
    Ok(())
}

/// `P` is invertible and `P^-1 t1_i P = t2_i` for every generator.
pub fn verify_conjugator(p: &Mat2, t1: &RepTuple, t2: &RepTuple) -> bool {
    let Some(inv) = p.inverse() else {
        return false;
    };
    t1.len() == t2.len()
        && t1
            .gens()
            .iter()
            .zip(t2.gens())
            .all(|(a, b)| &(&inv * a) * p == *b)
}

/// Basis of the intertwiner space `{P : P t2_i = t1_i P for all i}`.
pub fn intertwiners(t1: &RepTuple, t2: &RepTuple) -> Result<Vec<Mat2>> {
    check_compatible(t1, t2)?;
    let spec = t1.spec();
    let units: Vec<Mat2> = (0..4)
        .map(|k| {
            let mut v = vec![spec.zero(); 4];
            v[k] = spec.one();
            Mat2::from_vector(&v)
        })
        .collect();
    let mut rows: Vec<linalg::Vector> = Vec::new();
    for (a, b) in t1.gens().iter().zip(t2.gens()) {
        let cols: Vec<Vec<FieldElement>> = units
            .iter()
            .map(|e| (&(e * b) - &(a * e)).to_vector())
            .collect();
        rows.extend((0..4).map(|r| (0..4).map(|k| cols[k][r].clone()).collect()));
    }
    Ok(linalg::kernel(spec, &rows, 4)
        .iter()
        .map(|v| Mat2::from_vector(v))
        .collect())
}

/// An invertible `P` with `P^-1 t1_i P = t2_i`, or `None`.
///
/// `det` restricted to the intertwiner space is a quadratic form; its values
/// on the basis vectors and their pairwise sums determine every coefficient,
/// so one of those candidates is invertible unless the form vanishes
/// identically.
pub fn general_conjugator(t1: &RepTuple, t2: &RepTuple) -> Result<Option<Mat2>> {
    let basis = intertwiners(t1, t2)?;
    let mut candidates: Vec<Mat2> = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            candidates.push(&basis[i] + &basis[j]);
        }
    }
    Ok(candidates
        .into_iter()
        .find(|p| !p.det().is_zero())
        .filter(|p| verify_conjugator(p, t1, t2)))
}

fn require_semisimple(t: &RepTuple) -> Result<()> {
    if classify(t) != MoldLabel::SemiSimple {
        return Err(Error::NotSemiSimple);
    }
    Ok(())
}

/// Trace-coordinate equivalence on the semi-simple stratum.
pub fn ss_equivalent(t1: &RepTuple, t2: &RepTuple) -> Result<bool> {
    check_compatible(t1, t2)?;
    require_semisimple(t1)?;
    require_semisimple(t2)?;
    Ok(invariant_vector(t1)? == invariant_vector(t2)?)
}

/// First increasing generator product whose image has `m != 0`, single
/// generators first.
pub fn ss_witness(t: &RepTuple) -> Result<Vec<usize>> {
    increasing_subsequences(t.len())
        .into_iter()
        .find(|idx| !t.subsequence_product(idx).m().is_zero())
        .ok_or(Error::NoSplitGenerator)
}

/// Conjugator built from companion normal forms of a split witness:
/// `Q1^-1 W1 Q1 = Q2^-1 W2 Q2` gives `P = Q1 Q2^-1`.
pub fn ss_conjugator(t1: &RepTuple, t2: &RepTuple) -> Result<Option<Mat2>> {
    check_compatible(t1, t2)?;
    require_semisimple(t1)?;
    require_semisimple(t2)?;
    let witness = ss_witness(t1)?;
    if invariant_vector(t1)? != invariant_vector(t2)? {
        return Ok(None);
    }
    let q1 = t1.subsequence_product(&witness).companion_normalize()?.p;
    let q2 = t2.subsequence_product(&witness).companion_normalize()?.p;
    let p = &q1 * &q2.inverse().expect("companion basis is invertible");
    Ok(verify_conjugator(&p, t1, t2).then_some(p))
}

/// Character `r = tr/2` and derivation `d` of a unipotent representation,
/// with `ρ(γ) = r(γ) I + d(γ) η(A_α)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharDeriv {
    /// 1-based index of the base generator.
    pub alpha: usize,
    pub eta: Mat2,
    pub gen_coords: Vec<(FieldElement, FieldElement)>,
    pub mode: Mode,
}

impl CharDeriv {
    /// `(r(w), d(w))` through `r(γδ) = r(γ) r(δ)` and
    /// `d(γδ) = r(γ) d(δ) + d(γ) r(δ)`.
    pub fn coords(&self, w: &Word) -> Result<(FieldElement, FieldElement)> {
        w.validate(self.gen_coords.len(), self.mode)?;
        let spec = self.eta.spec();
        let mut acc = (spec.one(), spec.zero());
        for &l in w.letters() {
            let (r, d) = &self.gen_coords[l.unsigned_abs() as usize - 1];
            let (r, d) = if l > 0 {
                (r.clone(), d.clone())
            } else {
                let rinv = r
                    .inv()
                    .map_err(|_| Error::NonInvertibleGenerator(l.unsigned_abs() as usize))?;
                (rinv.clone(), -(d * &rinv.square()))
            };
            acc = (&acc.0 * &r, &acc.0 * &d + &acc.1 * &r);
        }
        Ok(acc)
    }

    pub fn r(&self, w: &Word) -> Result<FieldElement> {
        Ok(self.coords(w)?.0)
    }

    pub fn d(&self, w: &Word) -> Result<FieldElement> {
        Ok(self.coords(w)?.1)
    }
}

pub fn unipotent_decompose(t: &RepTuple) -> Result<CharDeriv> {
    if t.spec().is_char_two() {
        return Err(Error::CharTwo);
    }
    if classify(t) != MoldLabel::Unipotent {
        return Err(Error::NotUnipotent);
    }
    let etas = t.gens().iter().map(Mat2::eta).collect::<Result<Vec<_>>>()?;
    let alpha = etas.iter().position(|e| !e.is_zero()).expect("unipotent mold is not scalar");
    let base = etas[alpha].clone();
    let k = base.entries().iter().position(|x| !x.is_zero()).expect("nonzero");
    let half = t.spec().embed_int(2).inv()?;
    let gen_coords = t
        .gens()
        .iter()
        .zip(&etas)
        .map(|(g, e)| {
            let d = e.entries()[k].checked_div(&base.entries()[k])?;
            debug_assert_eq!(*e, base.scale(&d));
            Ok((&g.trace() * &half, d))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharDeriv {
        alpha: alpha + 1,
        eta: base,
        gen_coords,
        mode: t.mode(),
    })
}

/// `r(w) I + d(w) η(A_α)`.
pub fn unipotent_reconstruct(cd: &CharDeriv, w: &Word) -> Result<Mat2> {
    let (r, d) = cd.coords(w)?;
    Ok(&Mat2::scalar(r) + &cd.eta.scale(&d))
}

/// `(a, b)`-coefficients of a characteristic-2 unipotent representation in the
/// basis `{I, Z}`, `Z` the image of the base word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ABChart {
    pub base: Word,
    pub z: Mat2,
    pub det_z: FieldElement,
    pub gen_coords: Vec<(FieldElement, FieldElement)>,
    pub mode: Mode,
}

impl ABChart {
    /// `(a(w), b(w))` through `a(γδ) = a(γ) a(δ) + b(γ) b(δ) det Z` and
    /// `b(γδ) = a(γ) b(δ) + b(γ) a(δ)`.
    pub fn coords(&self, w: &Word) -> Result<(FieldElement, FieldElement)> {
        w.validate(self.gen_coords.len(), self.mode)?;
        let spec = self.z.spec();
        let mut acc = (spec.one(), spec.zero());
        for &l in w.letters() {
            let (a, b) = &self.gen_coords[l.unsigned_abs() as usize - 1];
            let (a, b) = if l > 0 {
                (a.clone(), b.clone())
            } else {
                let det = a.square() + b.square() * &self.det_z;
                let dinv = det
                    .inv()
                    .map_err(|_| Error::NonInvertibleGenerator(l.unsigned_abs() as usize))?;
                (a * &dinv, -(b * &dinv))
            };
            acc = (
                &acc.0 * &a + &acc.1 * &b * &self.det_z,
                &acc.0 * &b + &acc.1 * &a,
            );
        }
        Ok(acc)
    }

    pub fn a(&self, w: &Word) -> Result<FieldElement> {
        Ok(self.coords(w)?.0)
    }

    pub fn b(&self, w: &Word) -> Result<FieldElement> {
        Ok(self.coords(w)?.1)
    }

    /// `d(w) = det ρ(w) = a(w)^2 + b(w)^2 det Z`.
    pub fn d(&self, w: &Word) -> Result<FieldElement> {
        let (a, b) = self.coords(w)?;
        Ok(a.square() + b.square() * &self.det_z)
    }
}

/// Coordinates of `x` in the basis `{I, z}` for non-scalar `z`.
fn coords_in_pencil(x: &Mat2, z: &Mat2) -> Result<(FieldElement, FieldElement)> {
    let b = if !z.at(0, 1).is_zero() {
        x.at(0, 1).checked_div(z.at(0, 1))?
    } else if !z.at(1, 0).is_zero() {
        x.at(1, 0).checked_div(z.at(1, 0))?
    } else {
        (x.at(0, 0) - x.at(1, 1)).checked_div(&(z.at(0, 0) - z.at(1, 1)))?
    };
    let a = x.at(0, 0) - &b * z.at(0, 0);
    Ok((a, b))
}

pub fn uf2_decompose(t: &RepTuple) -> Result<ABChart> {
    if !t.spec().is_char_two() {
        return Err(Error::CharNotTwo);
    }
    if classify(t) != MoldLabel::UnipotentF2 {
        return Err(Error::NotUnipotentF2);
    }
    let alpha = t.gens().iter().position(|g| !g.is_scalar()).expect("mold is not scalar");
    let z = t.gens()[alpha].clone();
    let gen_coords = t
        .gens()
        .iter()
        .map(|g| coords_in_pencil(g, &z))
        .collect::<Result<Vec<_>>>()?;
    Ok(ABChart {
        base: Word::generator(alpha + 1),
        det_z: z.det(),
        z,
        gen_coords,
        mode: t.mode(),
    })
}

/// `a(w) I + b(w) Z`.
pub fn uf2_reconstruct(ch: &ABChart, w: &Word) -> Result<Mat2> {
    let (a, b) = ch.coords(w)?;
    Ok(&Mat2::scalar(a) + &ch.z.scale(&b))
}

/// Re-bases a chart at `beta`: `b_β(γ) = b_α(γ) b_β(α)` and
/// `a_β(γ) = a_α(γ) + a_β(α) b_α(γ)`, with `b_β(α) = b_α(β)^-1`.
pub fn uf2_transition(ch: &ABChart, beta: &Word) -> Result<ABChart> {
    let (a_ab, b_ab) = ch.coords(beta)?;
    let b_ba = b_ab.inv().map_err(|_| Error::ChartOverlapEmpty)?;
    let a_ba = -(&a_ab * &b_ba);
    let gen_coords = ch
        .gen_coords
        .iter()
        .map(|(a, b)| (a + &(&a_ba * b), b * &b_ba))
        .collect();
    let z = uf2_reconstruct(ch, beta)?;
    Ok(ABChart {
        base: beta.clone(),
        det_z: z.det(),
        z,
        gen_coords,
        mode: ch.mode,
    })
}

/// The scalars `c_i` with `A_i = c_i I`.
pub fn scalar_decompose(t: &RepTuple) -> Result<Vec<FieldElement>> {
    if !t.gens().iter().all(Mat2::is_scalar) {
        return Err(Error::NotScalar);
    }
    Ok(t.gens().iter().map(|g| g.at(0, 0).clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;
    const F2: FieldSpec = FieldSpec::Prime(2);

    fn tuple(spec: FieldSpec, gens: &[[[i64; 2]; 2]]) -> RepTuple {
        RepTuple::monoid(gens.iter().map(|g| Mat2::from_ints(spec, *g)).collect()).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn general_conjugator_examples() {
        let t = tuple(Q, &[[[1, 2], [3, 4]], [[0, 1], [1, 1]]]);
        let p = general_conjugator(&t, &t).unwrap().unwrap();
        assert!(verify_conjugator(&p, &t, &t));

        let a = tuple(Q, &[[[1, 0], [0, 2]]]);
        let b = tuple(Q, &[[[2, 0], [0, 1]]]);
        let p = general_conjugator(&a, &b).unwrap().unwrap();
        assert!(verify_conjugator(&p, &a, &b));
        // the intertwiners are the anti-diagonal matrices
        assert!(p.at(0, 0).is_zero() && p.at(1, 1).is_zero());

        let c = tuple(Q, &[[[1, 0], [0, 3]]]);
        assert_eq!(general_conjugator(&a, &c).unwrap(), None);
    }

    #[test]
    fn incompatible_tuples_rejected() {
        let a = tuple(Q, &[[[1, 0], [0, 2]]]);
        let b = tuple(Q, &[[[1, 0], [0, 2]], [[1, 0], [0, 2]]]);
        assert!(general_conjugator(&a, &b).is_err());
        let c = tuple(F2, &[[[1, 0], [0, 0]]]);
        assert!(matches!(general_conjugator(&a, &c), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn ss_examples() {
        let t1 = tuple(Q, &[[[1, 0], [0, 2]], [[3, 0], [0, 4]]]);
        let p = Mat2::from_ints(Q, [[1, 1], [0, 1]]);
        let t2 = t1.conjugate_by(&p).unwrap();
        assert!(ss_equivalent(&t1, &t2).unwrap());
        let c = ss_conjugator(&t1, &t2).unwrap().unwrap();
        assert!(verify_conjugator(&c, &t1, &t2));

        let a = tuple(Q, &[[[1, 0], [0, 2]]]);
        let b = tuple(Q, &[[[2, 0], [0, 1]]]);
        assert!(ss_equivalent(&a, &b).unwrap());

        let t3 = tuple(Q, &[[[1, 0], [0, 2]], [[4, 0], [0, 3]]]);
        assert!(!ss_equivalent(&t1, &t3).unwrap());
        assert_eq!(ss_conjugator(&t1, &t3).unwrap(), None);

        let u = tuple(Q, &[[[1, 1], [0, 1]]]);
        assert_eq!(ss_equivalent(&u, &u), Err(Error::NotSemiSimple));
        assert_eq!(ss_conjugator(&u, &u), Err(Error::NotSemiSimple));
    }

    #[test]
    fn ss_witness_skips_scalar_generators() {
        let x = Mat2::from_ints(F2, [[0, 1], [1, 1]]);
        let t = RepTuple::monoid(vec![Mat2::identity(F2), x]).unwrap();
        assert_eq!(classify(&t), MoldLabel::SemiSimple);
        assert_eq!(ss_witness(&t).unwrap(), vec![2]);
        let s = RepTuple::monoid(vec![Mat2::identity(F2)]).unwrap();
        assert_eq!(ss_witness(&s), Err(Error::NoSplitGenerator));
    }

    #[test]
    fn unipotent_examples() {
        let t = tuple(Q, &[[[1, 1], [0, 1]]]);
        let cd = unipotent_decompose(&t).unwrap();
        assert_eq!(cd.alpha, 1);
        assert_eq!(cd.eta, Mat2::from_ints(Q, [[0, 1], [0, 0]]));
        assert_eq!(cd.coords(&w("1")).unwrap(), (Q.one(), Q.one()));
        assert_eq!(cd.coords(&w("1,1")).unwrap(), (Q.one(), Q.embed_int(2)));
        assert_eq!(unipotent_reconstruct(&cd, &Word::empty()).unwrap(), Mat2::identity(Q));
        assert_eq!(unipotent_reconstruct(&cd, &w("1")).unwrap(), *t.gen(1));
        assert_eq!(
            unipotent_reconstruct(&cd, &w("1,1,1")).unwrap(),
            Mat2::from_ints(Q, [[1, 3], [0, 1]])
        );
        assert_eq!(
            unipotent_decompose(&tuple(Q, &[[[2, 0], [0, 2]]])),
            Err(Error::NotUnipotent)
        );
        assert_eq!(unipotent_decompose(&tuple(F2, &[[[1, 1], [0, 1]]])), Err(Error::CharTwo));
    }

    #[test]
    fn unipotent_group_inverses() {
        let t = RepTuple::group(vec![
            Mat2::from_ints(Q, [[2, 1], [0, 2]]),
            Mat2::from_ints(Q, [[3, 5], [0, 3]]),
        ])
        .unwrap();
        let cd = unipotent_decompose(&t).unwrap();
        for word in ["-1", "1,-2", "-2,-1,2", "2,2,-1"] {
            let word = w(word);
            assert_eq!(unipotent_reconstruct(&cd, &word).unwrap(), t.eval(&word).unwrap());
        }
    }

    #[test]
    fn uf2_examples() {
        let t = tuple(F2, &[[[0, 1], [1, 0]]]);
        let ch = uf2_decompose(&t).unwrap();
        assert_eq!(ch.base, w("1"));
        assert_eq!(ch.d(&w("1")).unwrap(), F2.one());
        assert_eq!(ch.coords(&w("1")).unwrap(), (F2.zero(), F2.one()));
        assert_eq!(ch.coords(&w("1,1")).unwrap(), (F2.one(), F2.zero()));
        assert_eq!(uf2_reconstruct(&ch, &Word::empty()).unwrap(), Mat2::identity(F2));
        assert_eq!(uf2_reconstruct(&ch, &w("1")).unwrap(), ch.z);
        assert_eq!(uf2_reconstruct(&ch, &w("1,1,1")).unwrap(), ch.z);

        let bad = tuple(F2, &[[[1, 1], [0, 0]]]);
        assert_eq!(uf2_decompose(&bad), Err(Error::NotUnipotentF2));
        let f3 = tuple(FieldSpec::Prime(3), &[[[0, 1], [1, 0]]]);
        assert_eq!(uf2_decompose(&f3), Err(Error::CharNotTwo));
    }

    #[test]
    fn uf2_transition_examples() {
        let a = Mat2::from_ints(F2, [[0, 1], [1, 0]]);
        let t = RepTuple::monoid(vec![a.clone(), &Mat2::identity(F2) + &a]).unwrap();
        let ch = uf2_decompose(&t).unwrap();
        assert_eq!(ch.coords(&w("2")).unwrap(), (F2.one(), F2.one()));
        let same = uf2_transition(&ch, &w("1")).unwrap();
        assert_eq!(same, ch);
        let moved = uf2_transition(&ch, &w("2")).unwrap();
        assert_eq!(moved.coords(&w("1")).unwrap(), (F2.one(), F2.one()));
        assert_eq!(moved.coords(&w("2")).unwrap(), (F2.zero(), F2.one()));
        for word in ["1", "2", "1,2,2", ""] {
            assert_eq!(uf2_reconstruct(&moved, &w(word)).unwrap(), t.eval(&w(word)).unwrap());
        }
        // 1,1 maps to I, a scalar
        assert_eq!(uf2_transition(&ch, &w("1,1")), Err(Error::ChartOverlapEmpty));
    }

    #[test]
    fn scalar_examples() {
        assert_eq!(
            scalar_decompose(&tuple(Q, &[[[1, 0], [0, 1]], [[2, 0], [0, 2]]])).unwrap(),
            vec![Q.one(), Q.embed_int(2)]
        );
        assert_eq!(scalar_decompose(&tuple(Q, &[[[1, 0], [0, 1]]])).unwrap(), vec![Q.one()]);
        assert_eq!(scalar_decompose(&tuple(Q, &[[[1, 0], [0, 2]]])), Err(Error::NotScalar));
    }
}
