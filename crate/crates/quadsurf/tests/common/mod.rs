//! Shared oracles and generators for the integration suites.
#![allow(dead_code)]

use quadsurf::classifier::SurfaceType;
use quadsurf::quad_order::{make_ring, rat, units};
use quadsurf::torus::{swap, AffineAut, TorusPoint};
use quadsurf::{Mat2, QuadElem, Rational, RingSpec};
use rand::Rng;

pub fn ring(d: u64, f: u64) -> RingSpec {
    make_ring(d, f).unwrap()
}

/// The rings that carry the catalog realizations.
pub fn catalog_rings() -> Vec<RingSpec> {
    vec![ring(0, 1), ring(1, 1), ring(2, 1), ring(3, 1), ring(3, 2)]
}

pub fn sl_rings() -> Vec<RingSpec> {
    vec![ring(0, 1), ring(1, 1), ring(2, 1), ring(3, 1)]
}

pub fn elem(r: RingSpec, a: i64, b: i64) -> QuadElem {
    r.elem(a, b).unwrap()
}

pub fn mat(r: RingSpec, c: [(i64, i64); 4]) -> Mat2 {
    Mat2::from_coords(r, c).unwrap()
}

// ---------------------------------------------------------------------------
// Integer-coordinate matrices with overflow detection

/// A 2×2 matrix with entries a + bθ, θ² = pθ + q, in checked i128 arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IMat {
    pub p: i128,
    pub q: i128,
    pub e: [(i128, i128); 4],
}

impl IMat {
    pub fn identity(r: RingSpec) -> IMat {
        IMat { p: r.p() as i128, q: r.q() as i128, e: [(1, 0), (0, 0), (0, 0), (1, 0)] }
    }

    pub fn from_mat(m: &Mat2) -> IMat {
        let r = m.ring();
        let c = |x: &QuadElem| {
            let (a, b) = x.int_coords().unwrap();
            (a as i128, b as i128)
        };
        let e = m.entries();
        IMat { p: r.p() as i128, q: r.q() as i128, e: [c(&e[0]), c(&e[1]), c(&e[2]), c(&e[3])] }
    }

    pub fn to_mat(self, r: RingSpec) -> Mat2 {
        let c = self.e.map(|(a, b)| (a as i64, b as i64));
        mat(r, c)
    }

    fn emul(&self, x: (i128, i128), y: (i128, i128)) -> Option<(i128, i128)> {
        let bd = x.1.checked_mul(y.1)?;
        let a = x.0.checked_mul(y.0)?.checked_add(bd.checked_mul(self.q)?)?;
        let b = x.0.checked_mul(y.1)?.checked_add(x.1.checked_mul(y.0)?)?.checked_add(bd.checked_mul(self.p)?)?;
        Some((a, b))
    }

    fn eadd(x: (i128, i128), y: (i128, i128)) -> Option<(i128, i128)> {
        Some((x.0.checked_add(y.0)?, x.1.checked_add(y.1)?))
    }

    pub fn mul(&self, o: &IMat) -> Option<IMat> {
        let [a, b, c, d] = self.e;
        let [x, y, z, w] = o.e;
        let s = |u, v, s2, t| IMat::eadd(self.emul(u, v)?, self.emul(s2, t)?);
        Some(IMat { e: [s(a, x, b, z)?, s(a, y, b, w)?, s(c, x, d, z)?, s(c, y, d, w)?], ..*self })
    }

    pub fn is_identity(&self) -> bool {
        self.e == [(1, 0), (0, 0), (0, 0), (1, 0)]
    }

    pub fn max_coord(&self) -> i128 {
        self.e.iter().map(|(a, b)| a.abs().max(b.abs())).max().unwrap()
    }

    /// Adjugate; the inverse when the determinant is 1.
    pub fn adj(&self) -> IMat {
        let [a, b, c, d] = self.e;
        let n = |x: (i128, i128)| (-x.0, -x.1);
        IMat { e: [d, n(b), n(c), a], ..*self }
    }
}

/// Least n ≤ max with mⁿ = I by plain powering; None on overflow or no hit.
pub fn power_order(m: &Mat2, max: u32) -> Option<u32> {
    let m = IMat::from_mat(m);
    let mut acc = m;
    for n in 1..=max {
        if acc.is_identity() {
            return Some(n);
        }
        acc = acc.mul(&m)?;
    }
    None
}

// ---------------------------------------------------------------------------
// Random matrices

fn coord<G: Rng>(rng: &mut G, r: RingSpec, bound: i64) -> (i128, i128) {
    let a = rng.gen_range(-bound..=bound) as i128;
    let b = if r.is_z() { 0 } else { rng.gen_range(-bound..=bound) as i128 };
    (a, b)
}

fn elementary<G: Rng>(rng: &mut G, r: RingSpec) -> IMat {
    let mut m = IMat::identity(r);
    let x = coord(rng, r, 2);
    if rng.gen_bool(0.5) {
        m.e[1] = x;
    } else {
        m.e[2] = x;
    }
    m
}

/// A product of elementary matrices with every coordinate in [−bound, bound].
pub fn random_sl<G: Rng>(rng: &mut G, r: RingSpec, bound: i128) -> IMat {
    loop {
        let mut m = IMat::identity(r);
        let steps = rng.gen_range(1..=5);
        let mut ok = true;
        for _ in 0..steps {
            match m.mul(&elementary(rng, r)) {
                Some(x) if x.max_coord() <= bound => m = x,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return m;
        }
    }
}

/// Finite-order elements of SL(2, R) to be conjugated around.
pub fn sl_seeds(r: RingSpec) -> Vec<Mat2> {
    let mut out: Vec<Mat2> = [
        [[1, 1], [-3, -2]],
        [[1, -2], [1, -1]],
        [[2, 1], [-3, -1]],
        [[-1, 0], [0, -1]],
        [[0, -1], [1, 0]],
        [[0, -1], [1, 1]],
        [[0, -1], [1, -1]],
    ]
    .iter()
    .map(|c| Mat2::from_ints(r, *c))
    .collect();
    for u in units(r) {
        out.push(Mat2::diag(&u, &u.inverse().unwrap()));
    }
    out
}

/// Finite-order elements of GL(2, R): the SL seeds, diagonal units and the swap.
pub fn gl_seeds(r: RingSpec) -> Vec<Mat2> {
    let us = units(r);
    let mut out = sl_seeds(r);
    for a in &us {
        for b in &us {
            out.push(Mat2::diag(a, b));
        }
    }
    out.push(Mat2::from_ints(r, [[0, 1], [1, 0]]));
    out
}

/// Random matrices over one ring with every coordinate in [−bound, bound].
/// Half of the draws are conjugates of finite-order seeds.
pub struct Sampler {
    pub ring: RingSpec,
    sl: Vec<IMat>,
    gl: Vec<IMat>,
    units: Vec<IMat>,
}

impl Sampler {
    pub fn new(r: RingSpec) -> Sampler {
        let im = |v: Vec<Mat2>| v.iter().map(IMat::from_mat).collect();
        let units = units(r).iter().map(|u| IMat::from_mat(&Mat2::diag(u, &r.one()))).collect();
        Sampler { ring: r, sl: im(sl_seeds(r)), gl: im(gl_seeds(r)), units }
    }

    fn conjugate_seed<G: Rng>(&self, rng: &mut G, seeds: &[IMat], bound: i128) -> Mat2 {
        loop {
            let g = seeds[rng.gen_range(0..seeds.len())];
            let s = random_sl(rng, self.ring, 3);
            if let Some(m) = s.mul(&g).and_then(|x| x.mul(&s.adj())) {
                if m.max_coord() <= bound {
                    return m.to_mat(self.ring);
                }
            }
        }
    }

    pub fn det_one<G: Rng>(&self, rng: &mut G, bound: i128) -> Mat2 {
        if rng.gen_bool(0.5) {
            return random_sl(rng, self.ring, bound).to_mat(self.ring);
        }
        self.conjugate_seed(rng, &self.sl, bound)
    }

    pub fn gl<G: Rng>(&self, rng: &mut G, bound: i128) -> Mat2 {
        if rng.gen_bool(0.5) {
            return self.conjugate_seed(rng, &self.gl, bound);
        }
        loop {
            let u = self.units[rng.gen_range(0..self.units.len())];
            let s = random_sl(rng, self.ring, bound);
            let m = if rng.gen_bool(0.5) { s.mul(&u) } else { u.mul(&s) };
            if let Some(m) = m.filter(|m| m.max_coord() <= bound) {
                return m.to_mat(self.ring);
            }
        }
    }
}

pub fn random_det_one<G: Rng>(rng: &mut G, r: RingSpec, bound: i128) -> Mat2 {
    Sampler::new(r).det_one(rng, bound)
}

pub fn random_gl<G: Rng>(rng: &mut G, r: RingSpec, bound: i128) -> Mat2 {
    Sampler::new(r).gl(rng, bound)
}

// ---------------------------------------------------------------------------
// Q(ζ₂₄)

/// An element of Q(ζ), ζ = e^{2πi/24}, as a polynomial of degree < 8 modulo
/// Φ₂₄ = x⁸ − x⁴ + 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyc(pub Vec<Rational>);

impl Cyc {
    fn reduce(mut c: Vec<Rational>) -> Cyc {
        for i in (8..c.len()).rev() {
            let top = c[i].clone();
            c[i - 4] = &c[i - 4] + &top;
            c[i - 8] = &c[i - 8] - &top;
        }
        c.truncate(8);
        c.resize(8, rat(0));
        Cyc(c)
    }

    pub fn rational(x: Rational) -> Cyc {
        Cyc::reduce(vec![x])
    }

    pub fn zeta(k: i64) -> Cyc {
        let k = k.rem_euclid(24) as usize;
        let mut c = vec![rat(0); k + 1];
        c[k] = rat(1);
        Cyc::reduce(c)
    }

    pub fn add(&self, o: &Cyc) -> Cyc {
        Cyc(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, x: &Rational) -> Cyc {
        Cyc(self.0.iter().map(|a| a * x).collect())
    }

    pub fn mul(&self, o: &Cyc) -> Cyc {
        let mut c = vec![rat(0); 15];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Cyc::reduce(c)
    }

    /// The image of x under θ ↦ f·ω, when Q(θ) ⊂ Q(ζ₂₄).
    pub fn from_elem(x: &QuadElem) -> Option<Cyc> {
        let r = x.ring();
        let omega = match r.d() {
            0 => Cyc::rational(rat(0)),
            1 => Cyc::zeta(6),
            2 => Cyc::zeta(3).add(&Cyc::zeta(9)),
            3 => Cyc::zeta(4),
            _ => return None,
        };
        let theta = omega.scale(&rat(r.f() as i64));
        Some(Cyc::rational(x.a().clone()).add(&theta.scale(x.b())))
    }
}

// ---------------------------------------------------------------------------
// Fixed points by enumeration

pub fn int4_of(h: &AffineAut) -> [[i64; 4]; 4] {
    *h.int4()
}

fn det3(m: &[[i128; 4]; 4], rows: [usize; 3], cols: [usize; 3]) -> i128 {
    let a = |i: usize, j: usize| m[rows[i]][cols[j]];
    a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
        + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
}

fn det4(m: &[[i128; 4]; 4]) -> i128 {
    (0..4)
        .map(|j| {
            let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det3(m, [1, 2, 3], [cols[0], cols[1], cols[2]])
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// M − I for the lattice action of h.
pub fn minus_identity(h: &AffineAut) -> [[i128; 4]; 4] {
    let m = h.int4();
    let mut out = [[0i128; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = m[i][j] as i128 - i128::from(i == j);
        }
    }
    out
}

pub fn abs_det(m: &[[i128; 4]; 4]) -> i128 {
    det4(m).abs()
}

/// Largest elementary divisor of a nonsingular 4×4 matrix, as
/// |det| / gcd of the 3×3 minors.
pub fn largest_elementary_divisor(m: &[[i128; 4]; 4]) -> i128 {
    let det = det4(m).abs();
    assert!(det != 0, "singular matrix");
    let triples = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let mut g = 0;
    for r in triples {
        for c in triples {
            g = gcd(g, det3(m, r, c));
        }
    }
    det / g
}

pub fn denominator(t: &TorusPoint) -> i128 {
    t.coords().iter().fold(1i128, |acc, x| {
        let d: i128 = x.denom().try_into().unwrap();
        acc / gcd(acc, d) * d
    })
}

/// Counts x ∈ (1/n)Z⁴/Z⁴ with h(x) = x.
pub fn grid_fixed_count(h: &AffineAut, n: i128) -> u64 {
    let a = minus_identity(h);
    let nt: Vec<i128> = h
        .translation_part()
        .coords()
        .iter()
        .map(|x| {
            let y = x * rat(n as i64);
            assert!(y.is_integer(), "grid too coarse for the translation");
            y.to_integer().try_into().unwrap()
        })
        .collect();
    let mut count = 0;
    let m = |x: i128| x.rem_euclid(n);
    for v0 in 0..n {
        for v1 in 0..n {
            for v2 in 0..n {
                for v3 in 0..n {
                    let v = [v0, v1, v2, v3];
                    if (0..4).all(|i| m((0..4).map(|j| a[i][j] * v[j]).sum::<i128>() + nt[i]) == 0) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

// ---------------------------------------------------------------------------
// Worked groups

pub struct Fixture {
    pub name: &'static str,
    pub ring: RingSpec,
    pub generators: Vec<AffineAut>,
    pub expected: SurfaceType,
}

fn aff(t: [(i64, i64); 4], m: Mat2) -> AffineAut {
    AffineAut::new(TorusPoint::from_ratios(t), m).unwrap()
}

const ZERO: [(i64, i64); 4] = [(0, 1); 4];
const HALF: [(i64, i64); 4] = [(1, 2), (0, 1), (0, 1), (0, 1)];

/// The five worked groups, in the order K3, Hyperelliptic, RuledElliptic,
/// Rational, Enriques.
pub fn worked() -> Vec<Fixture> {
    let z = RingSpec::integers();
    let g = RingSpec::gaussian();
    let minus = Mat2::identity(z).neg();
    let refl = Mat2::from_ints(z, [[1, 0], [0, -1]]);
    vec![
        Fixture { name: "kummer", ring: z, generators: vec![aff(ZERO, minus.clone())], expected: SurfaceType::K3 },
        Fixture {
            name: "hyperelliptic",
            ring: z,
            generators: vec![aff(HALF, refl.clone())],
            expected: SurfaceType::Hyperelliptic,
        },
        Fixture { name: "ruled", ring: z, generators: vec![aff(ZERO, refl)], expected: SurfaceType::RuledElliptic },
        Fixture {
            name: "scalar i",
            ring: g,
            generators: vec![aff(ZERO, Mat2::scalar(&g.theta().unwrap()))],
            expected: SurfaceType::Rational,
        },
        Fixture {
            name: "swap",
            ring: z,
            generators: vec![aff(ZERO, minus), aff(HALF, swap(z))],
            expected: SurfaceType::Enriques,
        },
    ]
}

/// The worked groups plus a few more over larger rings.
pub fn fixtures() -> Vec<Fixture> {
    let g = RingSpec::gaussian();
    let e = RingSpec::eisenstein();
    let i = g.theta().unwrap();
    let w = e.theta().unwrap();
    let mut out = worked();
    out.push(Fixture {
        name: "quaternion",
        ring: g,
        generators: vec![aff(ZERO, Mat2::diag(&i, &-&i)), aff(ZERO, Mat2::from_ints(g, [[0, 1], [-1, 0]]))],
        expected: SurfaceType::K3,
    });
    out.push(Fixture {
        name: "order four hyperelliptic",
        ring: g,
        generators: vec![aff([(1, 4), (0, 1), (0, 1), (0, 1)], Mat2::diag(&g.one(), &i))],
        expected: SurfaceType::Hyperelliptic,
    });
    out.push(Fixture {
        name: "eisenstein ruled",
        ring: e,
        generators: vec![aff(ZERO, Mat2::diag(&e.one(), &w))],
        expected: SurfaceType::RuledElliptic,
    });
    out.push(Fixture {
        name: "translations",
        ring: e,
        generators: vec![
            AffineAut::translation(e, TorusPoint::from_ratios([(1, 3), (0, 1), (0, 1), (0, 1)])),
            AffineAut::translation(e, TorusPoint::from_ratios([(0, 1), (0, 1), (1, 2), (1, 2)])),
        ],
        expected: SurfaceType::Abelian,
    });
    out
}

// ---------------------------------------------------------------------------
// Witness matrices

pub struct Witness {
    pub name: &'static str,
    pub m: Mat2,
    /// Eigenvalues in 24ths of a turn.
    pub lam: (i64, i64),
    pub order: u32,
}

fn wit(name: &'static str, m: Mat2, lam: (i64, i64), order: u32) -> Witness {
    Witness { name, m, lam, order }
}

/// g₁, g₂, g₃ of orders 3, 4, 6 in SL(2, Z).
pub fn sl_witnesses() -> Vec<Witness> {
    let z = RingSpec::integers();
    vec![
        wit("g1", Mat2::from_ints(z, [[1, 1], [-3, -2]]), (8, 16), 3),
        wit("g2", Mat2::from_ints(z, [[1, -2], [1, -1]]), (6, 18), 4),
        wit("g3", Mat2::from_ints(z, [[2, 1], [-3, -1]]), (4, 20), 6),
    ]
}

/// Witnesses with det ≠ 1. The two order-12 O₋₃ cases use anti-diagonal
/// matrices: e^{5πi/6} and e^{πi/6} do not lie in O₋₃.
pub fn non_sl_witnesses() -> Vec<Witness> {
    let g = ring(1, 1);
    let o2 = ring(2, 1);
    let e = ring(3, 1);
    let e2 = ring(3, 2);
    let w = |k: u32| e.theta().unwrap().pow(k);
    let one = e.one();
    let minus = e.int(-1);
    vec![
        wit("g(i)", mat(g, [(1, 0), (1, 0), (0, 1), (-1, 1)]), (2, 10), 12),
        wit("g(-i)", mat(g, [(1, 0), (1, 0), (0, -1), (-1, -1)]), (14, 22), 12),
        wit("g(√-2)", mat(o2, [(1, 0), (1, 0), (0, 1), (-1, 1)]), (3, 9), 8),
        wit("g(-√-2)", mat(o2, [(1, 0), (1, 0), (0, -1), (-1, -1)]), (15, 21), 8),
        wit("g(√-3)", mat(e, [(1, 0), (1, 0), (-1, 2), (-2, 2)]), (4, 8), 6),
        wit("g(-√-3)", mat(e, [(1, 0), (1, 0), (1, -2), (0, -2)]), (16, 20), 6),
        wit("g(√-3) over R_{-3,2}", mat(e2, [(1, 0), (1, 0), (-1, 1), (-2, 1)]), (4, 8), 6),
        wit("g(-√-3) over R_{-3,2}", mat(e2, [(1, 0), (1, 0), (1, -1), (0, -1)]), (16, 20), 6),
        wit("g_i(0)", mat(g, [(0, 1), (0, 1), (-1, -1), (0, -1)]), (9, 21), 8),
        wit("g_i(1+i)", mat(g, [(0, 1), (0, 0), (0, 0), (1, 0)]), (6, 0), 4),
        wit("g_i(-1-i)", mat(g, [(-1, 0), (0, 0), (0, 0), (0, -1)]), (18, 12), 4),
        wit("g_-i(0)", mat(g, [(0, -1), (0, -1), (-1, 1), (0, 1)]), (3, 15), 8),
        wit("g_-i(1-i)", mat(g, [(0, -1), (0, 0), (0, 0), (1, 0)]), (18, 0), 4),
        wit("g_-i(-1+i)", mat(g, [(0, 1), (0, 0), (0, 0), (-1, 0)]), (6, 12), 4),
        wit("diag(ζ3, ζ6⁻¹)", Mat2::diag(&w(2), &w(5)), (8, 20), 6),
        wit("diag(ζ6, 1)", Mat2::diag(&w(1), &one), (4, 0), 6),
        wit("diag(ζ3⁻¹, -1)", Mat2::diag(&w(4), &minus), (16, 12), 6),
        wit("diag(ζ6, ζ3⁻¹)", Mat2::diag(&w(1), &w(4)), (4, 16), 6),
        wit("diag(ζ3, -1)", Mat2::diag(&w(2), &minus), (8, 12), 6),
        wit("diag(ζ6⁻¹, 1)", Mat2::diag(&w(5), &one), (20, 0), 6),
        wit("diag(ζ3, 1)", Mat2::diag(&w(2), &one), (8, 0), 3),
        wit("diag(ζ6⁻¹, -1)", Mat2::diag(&w(5), &minus), (20, 12), 6),
        wit("diag(ζ3⁻¹, 1)", Mat2::diag(&w(4), &one), (16, 0), 3),
        wit("diag(ζ6, -1)", Mat2::diag(&w(1), &minus), (4, 12), 6),
        wit("[[0,1],[1-θ,0]]", mat(e, [(0, 0), (1, 0), (1, -1), (0, 0)]), (10, 22), 12),
        wit("[[0,1],[θ,0]]", mat(e, [(0, 0), (1, 0), (0, 1), (0, 0)]), (2, 14), 12),
    ]
}
