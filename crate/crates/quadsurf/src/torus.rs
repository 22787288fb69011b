//! The abelian surface A = E×E with E = C/R, torsion points on it, affine
//! automorphisms x ↦ L·x + t and closure of finitely generated affine groups.
//!
//! A point (x₁ + y₁θ, x₂ + y₂θ) is stored by its four real coordinates
//! (x₁, y₁, x₂, y₂) modulo 1. Linear parts act on those coordinates through a
//! 4×4 integer matrix assembled from multiplication matrices on {1, θ}.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::matrix_group::{close_linear, element_order, LinearGroup, Mat2};
use crate::quad_order::{format_rational, rat, QuadElem, Rational, RingSpec, SerRational};

/// Default closure bound for affine groups.
pub const DEFAULT_AFFINE_CAP: usize = 10_000;

pub type IntMat2 = [[i64; 2]; 2];
pub type IntMat4 = [[i64; 4]; 4];

fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// A torsion point of A, coordinates reduced into [0, 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    c: [Rational; 4],
}

impl TorusPoint {
    pub fn new(c: [Rational; 4]) -> Self {
        TorusPoint { c: c.map(|x| frac(&x)) }
    }

    pub fn zero() -> Self {
        TorusPoint { c: std::array::from_fn(|_| Rational::zero()) }
    }

    /// Point with coordinates n_i / den.
    pub fn from_ratios(c: [(i64, i64); 4]) -> Self {
        TorusPoint::new(c.map(|(n, d)| Rational::new(n.into(), d.into())))
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &TorusPoint) -> TorusPoint {
        TorusPoint::new(std::array::from_fn(|i| &self.c[i] + &o.c[i]))
    }

    pub fn neg(&self) -> TorusPoint {
        TorusPoint::new(self.c.clone().map(|x| -x))
    }

    pub fn sub(&self, o: &TorusPoint) -> TorusPoint {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> TorusPoint {
        TorusPoint::new(self.c.clone().map(|x| x * rat(k)))
    }

    /// Order in the group A: lcm of coordinate denominators.
    pub fn order(&self) -> u64 {
        self.c
            .iter()
            .map(|x| x.denom().to_u64().expect("denominator overflow"))
            .fold(1, |a, b| a.lcm(&b))
    }

    /// Applies an integer 4×4 matrix and reduces.
    pub fn transform(&self, m: &IntMat4) -> TorusPoint {
        TorusPoint::new(std::array::from_fn(|i| {
            (0..4).fold(Rational::zero(), |acc, j| acc + &self.c[j] * rat(m[i][j]))
        }))
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.c.iter().map(format_rational).collect();
        write!(f, "({})", s.join(", "))
    }
}

impl Serialize for TorusPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<SerRational> = self.c.iter().map(SerRational).collect();
        v.serialize(s)
    }
}

/// Multiplication by x on the basis {1, θ}; columns are x·1 and x·θ.
pub fn mult_matrix(x: &QuadElem) -> Result<IntMat2> {
    let (a, b) = x.int_coords()?;
    let r = x.ring();
    Ok([[a, b * r.q()], [b, a + b * r.p()]])
}

pub fn linear_to_int4(m: &Mat2) -> Result<IntMat4> {
    let mut out = [[0i64; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            let blk = mult_matrix(m.get(i, j))?;
            for r in 0..2 {
                for c in 0..2 {
                    out[2 * i + r][2 * j + c] = blk[r][c];
                }
            }
        }
    }
    Ok(out)
}

pub fn int4_mul(a: &IntMat4, b: &IntMat4) -> IntMat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn int4_identity() -> IntMat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| i64::from(i == j)))
}

/// x ↦ L·x + t on A.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineAut {
    translation: TorusPoint,
    linear: Mat2,
    int4: IntMat4,
}

impl AffineAut {
    pub fn new(translation: TorusPoint, linear: Mat2) -> Result<Self> {
        if !linear.is_gl() {
            return Err(Error::NotInvertibleInR);
        }
        let int4 = linear_to_int4(&linear)?;
        Ok(AffineAut { translation, linear, int4 })
    }

    pub fn linear(m: Mat2) -> Result<Self> {
        AffineAut::new(TorusPoint::zero(), m)
    }

    pub fn translation(ring: RingSpec, t: TorusPoint) -> Self {
        AffineAut::new(t, Mat2::identity(ring)).expect("identity is invertible")
    }

    pub fn identity(ring: RingSpec) -> Self {
        AffineAut::translation(ring, TorusPoint::zero())
    }

    pub fn ring(&self) -> RingSpec {
        self.linear.ring()
    }

    pub fn linear_part(&self) -> &Mat2 {
        &self.linear
    }

    pub fn translation_part(&self) -> &TorusPoint {
        &self.translation
    }

    pub fn int4(&self) -> &IntMat4 {
        &self.int4
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.is_zero()
    }

    pub fn is_translation(&self) -> bool {
        self.linear.is_identity()
    }

    pub fn apply(&self, x: &TorusPoint) -> TorusPoint {
        x.transform(&self.int4).add(&self.translation)
    }

    /// self ∘ o.
    pub fn compose(&self, o: &AffineAut) -> AffineAut {
        AffineAut {
            translation: self.apply(&o.translation),
            linear: self.linear.mul(&o.linear),
            int4: int4_mul(&self.int4, &o.int4),
        }
    }

    pub fn inv(&self) -> AffineAut {
        let linear = self.linear.inv().expect("linear part is invertible");
        let int4 = linear_to_int4(&linear).expect("inverse of an integral GL matrix is integral");
        let translation = self.translation.transform(&int4).neg();
        AffineAut { translation, linear, int4 }
    }

    /// g ∘ self ∘ g⁻¹.
    pub fn conjugate_by(&self, g: &AffineAut) -> AffineAut {
        g.compose(self).compose(&g.inv())
    }

    pub fn pow(&self, n: u64) -> AffineAut {
        let mut acc = AffineAut::identity(self.ring());
        for _ in 0..n {
            acc = acc.compose(self);
        }
        acc
    }
}

impl fmt::Display for AffineAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "τ{}∘{}", self.translation, self.linear)
    }
}

impl Serialize for AffineAut {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AffineAut", 2)?;
        st.serialize_field("linear", &self.linear)?;
        st.serialize_field("translation", &self.translation)?;
        st.end()
    }
}

pub fn affine_apply(h: &AffineAut, x: &TorusPoint) -> TorusPoint {
    h.apply(x)
}

pub fn affine_compose(g: &AffineAut, h: &AffineAut) -> AffineAut {
    g.compose(h)
}

pub fn affine_inv(h: &AffineAut) -> AffineAut {
    h.inv()
}

/// Order of h, None when the linear part has infinite order.
///
/// With r the order of L, h^r is the translation by Σ L^k t, so the order is
/// r times the order of that torsion point.
pub fn affine_order(h: &AffineAut, cap: usize) -> Result<Option<u64>> {
    let r = match element_order(&h.linear) {
        Some(r) => r as u64,
        None => return Ok(None),
    };
    let hr = h.pow(r);
    debug_assert!(hr.is_translation());
    let n = r * hr.translation.order();
    if n > cap as u64 {
        return Err(Error::GroupExceedsCap(cap));
    }
    Ok(Some(n))
}

/// A finite closed subgroup of Aut(A).
#[derive(Clone, Debug)]
pub struct AffineGroup {
    pub ring: RingSpec,
    pub elements: Vec<AffineAut>,
    pub generators: Vec<AffineAut>,
    /// T(H) = ker L.
    pub translation_subgroup: Vec<AffineAut>,
    /// K = ker(det ∘ L).
    pub kernel_det: Vec<AffineAut>,
    pub linear_image: LinearGroup,
}

impl AffineGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, h: &AffineAut) -> bool {
        self.elements.contains(h)
    }

    /// Elements outside K.
    pub fn outside_kernel(&self) -> Vec<&AffineAut> {
        let one = self.ring.one();
        self.elements.iter().filter(|h| h.linear.det() != one).collect()
    }
}

pub fn close_affine(ring: RingSpec, generators: &[AffineAut], cap: usize) -> Result<AffineGroup> {
    for (i, g) in generators.iter().enumerate() {
        if g.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if affine_order(g, usize::MAX)?.is_none() {
            return Err(Error::InfiniteOrderGenerator(i));
        }
    }
    let id = AffineAut::identity(ring);
    let mut seen = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                if elements.len() >= cap {
                    return Err(Error::GroupExceedsCap(cap));
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut lin_gens: Vec<Mat2> = Vec::new();
    for g in generators {
        if !lin_gens.contains(&g.linear) {
            lin_gens.push(g.linear.clone());
        }
    }
    let linear_image = close_linear(ring, &lin_gens, elements.len().max(1))?;
    let one = ring.one();
    let translation_subgroup = elements.iter().filter(|h| h.is_translation()).cloned().collect();
    let kernel_det = elements.iter().filter(|h| h.linear.det() == one).cloned().collect();
    Ok(AffineGroup {
        ring,
        elements,
        generators: generators.to_vec(),
        translation_subgroup,
        kernel_det,
        linear_image,
    })
}

/// The factor swap [[0,1],[1,0]].
pub fn swap(ring: RingSpec) -> Mat2 {
    Mat2::from_ints(ring, [[0, 1], [1, 0]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec {
        RingSpec::integers()
    }

    fn half() -> TorusPoint {
        TorusPoint::from_ratios([(1, 2), (0, 1), (0, 1), (0, 1)])
    }

    #[test]
    fn multiplication_matrices() {
        let g = RingSpec::gaussian();
        assert_eq!(mult_matrix(&g.one()).unwrap(), [[1, 0], [0, 1]]);
        assert_eq!(mult_matrix(&g.theta().unwrap()).unwrap(), [[0, -1], [1, 0]]);
        let e = RingSpec::eisenstein();
        assert_eq!(mult_matrix(&e.theta().unwrap()).unwrap(), [[0, -1], [1, 1]]);
        let half = QuadElem::new(g, Rational::new(1.into(), 2.into()), Rational::zero()).unwrap();
        assert_eq!(mult_matrix(&half), Err(Error::NotIntegral));
    }

    #[test]
    fn int4_blocks() {
        assert_eq!(linear_to_int4(&Mat2::identity(z())).unwrap(), int4_identity());
        let d = Mat2::from_ints(z(), [[1, 0], [0, -1]]);
        let m = linear_to_int4(&d).unwrap();
        assert_eq!((m[0][0], m[1][1], m[2][2], m[3][3]), (1, 1, -1, -1));
        let s = linear_to_int4(&swap(z())).unwrap();
        assert_eq!(s[0][2], 1);
        assert_eq!(s[1][3], 1);
        assert_eq!(s[2][0], 1);
        assert_eq!(s[3][1], 1);
    }

    #[test]
    fn orders() {
        let t = AffineAut::translation(z(), half());
        assert_eq!(affine_order(&t, 100).unwrap(), Some(2));
        let h = AffineAut::new(half(), Mat2::from_ints(z(), [[1, 0], [0, -1]])).unwrap();
        assert_eq!(affine_order(&h, 100).unwrap(), Some(2));
        let h = AffineAut::new(half(), swap(z())).unwrap();
        assert_eq!(affine_order(&h, 100).unwrap(), Some(4));
        assert_eq!(h.pow(2).translation_part(), &TorusPoint::from_ratios([(1, 2), (0, 1), (1, 2), (0, 1)]));
        let u = AffineAut::linear(Mat2::from_ints(z(), [[1, 1], [0, 1]])).unwrap();
        assert_eq!(affine_order(&u, 100).unwrap(), None);
        assert_eq!(affine_order(&h, 3), Err(Error::GroupExceedsCap(3)));
    }

    #[test]
    fn inverse_and_apply() {
        let e = RingSpec::eisenstein();
        let m = Mat2::from_coords(e, [(0, 0), (1, 0), (1, -1), (0, 0)]).unwrap();
        let t = TorusPoint::from_ratios([(1, 3), (2, 3), (0, 1), (1, 2)]);
        let h = AffineAut::new(t, m).unwrap();
        assert!(h.compose(&h.inv()).is_identity());
        let x = TorusPoint::from_ratios([(1, 5), (1, 7), (2, 3), (0, 1)]);
        assert_eq!(h.inv().apply(&h.apply(&x)), x);
    }

    #[test]
    fn closures() {
        let minus = AffineAut::linear(Mat2::identity(z()).neg()).unwrap();
        let g = close_affine(z(), std::slice::from_ref(&minus), 100).unwrap();
        assert_eq!((g.order(), g.translation_subgroup.len()), (2, 1));
        let t1 = AffineAut::translation(z(), half());
        let t2 = AffineAut::translation(z(), TorusPoint::from_ratios([(0, 1), (0, 1), (1, 2), (0, 1)]));
        assert_eq!(close_affine(z(), &[t1, t2], 100).unwrap().order(), 4);
        let ho = AffineAut::new(half(), swap(z())).unwrap();
        let g = close_affine(z(), &[minus, ho], 100).unwrap();
        assert_eq!((g.order(), g.translation_subgroup.len(), g.kernel_det.len()), (8, 2, 4));
        assert_eq!(g.linear_image.order(), 4);
    }
}
