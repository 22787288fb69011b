//! Encoded subgroup catalogs of GL(2,R), their explicit realizations, the
//! affine example families and a self-verification routine.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::classifier::{surface_type, SurfaceType};
use crate::error::{Error, Result};
use crate::matrix_group::{
    classify_gl, close_linear, gl_signature, CatalogLabel, EigenPair, Family, GlSignature, Mat2,
    DEFAULT_LINEAR_CAP,
};
use crate::quad_order::{make_ring, QuadElem, Rational, RingSpec};
use crate::torus::{close_affine, swap, AffineAut, TorusPoint, DEFAULT_AFFINE_CAP};

/// Template entry: a + bθ times b₁^e.
type E = (i64, i64, i8);
/// Template matrix in row-major order.
type G = [E; 4];

/// Explicit generators over a fixed ring.
#[derive(Debug)]
pub struct Realization {
    pub d: u64,
    pub f: u64,
    pub names: &'static [&'static str],
    gens: &'static [G],
    pub relations: &'static [&'static str],
}

impl Realization {
    pub fn has_free_parameter(&self) -> bool {
        self.gens.iter().any(|g| g.iter().any(|e| e.2 != 0))
    }
}

#[derive(Debug)]
pub struct CatalogEntry {
    pub label: CatalogLabel,
    /// The ring the statement names.
    pub ring: &'static str,
    pub order: usize,
    pub s: usize,
    /// Index j of the SL part K_j.
    pub sl: u32,
    pub abelian: Option<bool>,
    pub cyclic: Option<bool>,
    /// Some element with generating determinant centralizes the SL part.
    pub inner: Option<bool>,
    /// Admissible eigenvalue pairs of h_o in 24ths of a turn; empty = any.
    pub eigen: &'static [(i64, i64)],
    pub realization: Option<Realization>,
    /// Field of the known realization when none over R is available.
    pub field: Option<&'static str>,
    pub notes: &'static [&'static str],
}

impl CatalogEntry {
    pub fn realizable(&self) -> bool {
        self.realization.is_some()
    }

    pub fn eigen_pairs(&self) -> Vec<EigenPair> {
        self.eigen.iter().map(|&(a, b)| EigenPair::from_24(a, b)).collect()
    }

    /// Whether a recognition signature is compatible with this entry.
    pub fn matches(&self, sig: &GlSignature) -> bool {
        let flag = |want: Option<bool>, got: bool| want.is_none_or(|w| w == got);
        self.sl == sig.sl_label.index
            && self.s == sig.s
            && self.order == sig.order
            && flag(self.abelian, sig.abelian)
            && flag(self.cyclic, sig.cyclic)
            && flag(self.inner, sig.inner)
            && (self.eigen.is_empty()
                || self
                    .eigen_pairs()
                    .iter()
                    .any(|p| sig.eigen_pairs.contains(p) || sig.eigen_pairs.contains(&p.conj())))
    }
}

const O: E = (0, 0, 0);
const P1: E = (1, 0, 0);
const M1: E = (-1, 0, 0);

// over any ring
const ID: G = [P1, O, O, P1];
const NEG: G = [M1, O, O, M1];
const K3G: G = [P1, (-2, 0, 0), P1, M1];
const K5G: G = [P1, P1, (-3, 0, 0), (-2, 0, 0)];
const K6G: G = [(2, 0, 0), P1, (-3, 0, 0), M1];
const J: G = [O, P1, M1, O];
const J_B1: G = [O, (1, 0, 1), (-1, 0, -1), O];
const ROT4: G = [O, M1, P1, O];
const ROT3: G = [O, M1, P1, M1];
const ROT6: G = [P1, M1, P1, O];
const SWAP: G = [O, P1, P1, O];
const REFL: G = [P1, O, O, M1];
const REFL2: G = [M1, O, O, P1];

// over Z[i], θ = i
const DI: G = [(0, 1, 0), O, O, (0, -1, 0)];
const G2I_B1: G = [O, (0, 1, 1), (0, 1, -1), O];
const II: G = [(0, 1, 0), O, O, (0, 1, 0)];
const DI1: G = [(0, 1, 0), O, O, P1];
const GI0: G = [(0, 1, 0), (0, 1, 0), (-1, -1, 0), (0, -1, 0)];
const GI: G = [P1, P1, (0, 1, 0), (-1, 1, 0)];

// over O_{-3}, θ = e^{πi/3}
const G4: G = [(0, 1, 0), O, O, (1, -1, 0)];
const K8G2: G = [(0, 1, 0), (-1, 1, 0), (-1, 1, 0), (0, -1, 0)];
const K8G3: G = [(0, -1, 0), O, P1, (-1, 1, 0)];
const DW1: G = [(-1, 1, 0), O, O, P1];
const DT1: G = [(0, 1, 0), O, O, P1];
const TI: G = [(0, 1, 0), O, O, (0, 1, 0)];
const WI: G = [(-1, 1, 0), O, O, (-1, 1, 0)];
const DC3: G = [(-1, 1, 0), O, O, (0, -1, 0)];
const DC6: G = [(0, 1, 0), O, O, (0, -1, 0)];
const C12: G = [O, P1, (1, -1, 0), O];
const DTW: G = [(0, 1, 0), O, O, (-1, 1, 0)];
const D1W: G = [P1, O, O, (-1, 1, 0)];
const D1T: G = [P1, O, O, (0, 1, 0)];
const DWW: G = [(-1, 1, 0), O, O, (1, -1, 0)];

// over O_{-2}, θ = √−2
const GS2: G = [P1, P1, (0, 1, 0), (-1, 1, 0)];
// over R_{-3,2}, θ = 1 + √−3
const GS3: G = [P1, P1, (-1, 1, 0), (-2, 1, 0)];

const fn lab(family: Family, index: u32) -> CatalogLabel {
    CatalogLabel { family, index }
}

const fn real(
    (d, f): (u64, u64),
    names: &'static [&'static str],
    gens: &'static [G],
    relations: &'static [&'static str],
) -> Option<Realization> {
    Some(Realization { d, f, names, gens, relations })
}

const ZZ: (u64, u64) = (0, 1);
const ZI: (u64, u64) = (1, 1);
const O3: (u64, u64) = (3, 1);
const O2: (u64, u64) = (2, 1);
const R32: (u64, u64) = (3, 2);

const BASE: CatalogEntry = CatalogEntry {
    label: lab(Family::K, 1),
    ring: "any",
    order: 1,
    s: 1,
    sl: 1,
    abelian: None,
    cyclic: None,
    inner: None,
    eigen: &[],
    realization: None,
    field: None,
    notes: &[],
};

const Q8_RELS: [&str; 3] = ["g1^2 = -I", "g2^2 = -I", "g2 g1 = -g1 g2"];
const Q12_RELS: [&str; 3] = ["g1^2 = -I", "g4^3 = -I", "g1 g4 g1^-1 = g4^-1"];
const K8_RELS: [&str; 6] = [
    "g1^2 = -I",
    "g2^2 = -I",
    "g2 g1 = -g1 g2",
    "g3^3 = I",
    "g3 g1 g3^-1 = g2",
    "g3 g2 g3^-1 = g1 g2",
];

macro_rules! rels {
    ($base:expr; $($r:expr),* $(,)?) => {{
        const B: [&str; $base.len()] = $base;
        const EXTRA: &[&str] = &[$($r),*];
        const N: usize = B.len() + EXTRA.len();
        const OUT: [&str; N] = {
            let mut out = [""; N];
            let mut i = 0;
            while i < B.len() {
                out[i] = B[i];
                i += 1;
            }
            let mut j = 0;
            while j < EXTRA.len() {
                out[B.len() + j] = EXTRA[j];
                j += 1;
            }
            out
        };
        &OUT
    }};
}

static ENTRIES: &[CatalogEntry] = &[
    // K family: finite subgroups of SL(2,R)
    CatalogEntry { label: lab(Family::K, 1), sl: 1, realization: real(ZZ, &["g1"], &[ID], &["g1 = I"]), ..BASE },
    CatalogEntry { label: lab(Family::K, 2), order: 2, sl: 2, realization: real(ZZ, &["g1"], &[NEG], &["g1 = -I"]), ..BASE },
    CatalogEntry { label: lab(Family::K, 3), order: 4, sl: 3, realization: real(ZZ, &["g1"], &[K3G], &["g1^2 = -I"]), ..BASE },
    CatalogEntry {
        label: lab(Family::K, 4),
        ring: "Z[i]",
        order: 8,
        sl: 4,
        realization: real(ZI, &["g2", "g1"], &[DI, J_B1], &["g1^2 = -I", "g2^2 = -I", "g2 g1 = -g1 g2"]),
        ..BASE
    },
    CatalogEntry { label: lab(Family::K, 5), order: 3, sl: 5, realization: real(ZZ, &["g1"], &[K5G], &["g1^3 = I"]), ..BASE },
    CatalogEntry { label: lab(Family::K, 6), order: 6, sl: 6, realization: real(ZZ, &["g1"], &[K6G], &["g1^3 = -I"]), ..BASE },
    CatalogEntry {
        label: lab(Family::K, 7),
        ring: "O_{-3}",
        order: 12,
        sl: 7,
        realization: real(O3, &["g1", "g4"], &[J_B1, G4], &Q12_RELS),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::K, 8),
        ring: "O_{-3}",
        order: 24,
        sl: 8,
        realization: real(O3, &["g1", "g2", "g3"], &[J, K8G2, K8G3], &K8_RELS),
        notes: &["realized over O_{-3}; the existence over an arbitrary R is open"],
        ..BASE
    },
    // trivial SL part
    CatalogEntry {
        label: lab(Family::HC1, 1),
        order: 2,
        s: 2,
        sl: 1,
        abelian: Some(true),
        cyclic: Some(true),
        eigen: &[(12, 0)],
        realization: real(ZZ, &["h"], &[REFL], &["h^2 = I"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC1, 2),
        ring: "O_{-3}",
        order: 3,
        s: 3,
        sl: 1,
        abelian: Some(true),
        cyclic: Some(true),
        eigen: &[(16, 16), (8, 0)],
        realization: real(O3, &["h"], &[DW1], &["h^3 = I"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC1, 3),
        ring: "Z[i]",
        order: 4,
        s: 4,
        sl: 1,
        abelian: Some(true),
        cyclic: Some(true),
        eigen: &[(6, 0), (18, 12)],
        realization: real(ZI, &["h"], &[DI1], &["h^4 = I"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC1, 4),
        ring: "O_{-3}",
        order: 6,
        s: 6,
        sl: 1,
        abelian: Some(true),
        cyclic: Some(true),
        eigen: &[(4, 0), (16, 12), (8, 20)],
        realization: real(O3, &["h"], &[DT1], &["h^6 = I"]),
        ..BASE
    },
    // SL part ⟨−I⟩
    CatalogEntry {
        label: lab(Family::HC2, 1),
        ring: "Z[i]",
        order: 4,
        s: 2,
        sl: 2,
        abelian: Some(true),
        cyclic: Some(true),
        eigen: &[(6, 6)],
        realization: real(ZI, &["h"], &[II], &["h^2 = -I"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC2, 2),
        order: 4,
        s: 2,
        sl: 2,
        abelian: Some(true),
        cyclic: Some(false),
        eigen: &[(12, 0)],
        realization: real(ZZ, &["g", "h"], &[NEG, REFL], &["g = -I", "h^2 = I", "g h = h g"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC2, 3),
        ring: "O_{-3}",
        order: 6,
        s: 3,
        sl: 2,
        abelian: Some(true),
        cyclic: Some(true),
        eigen: &[(4, 4), (20, 12)],
        realization: real(O3, &["h"], &[TI], &["h^3 = -I"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC2, 4),
        ring: "Z[i]",
        order: 8,
        s: 4,
        sl: 2,
        abelian: Some(true),
        cyclic: Some(true),
        eigen: &[(9, 21)],
        realization: real(ZI, &["h"], &[GI0], &["h^4 = -I"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC2, 5),
        ring: "Z[i]",
        order: 8,
        s: 4,
        sl: 2,
        abelian: Some(true),
        cyclic: Some(false),
        eigen: &[(6, 0)],
        realization: real(ZI, &["g", "h"], &[NEG, DI1], &["g = -I", "h^4 = I", "g h = h g"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC2, 6),
        ring: "Z[i]",
        order: 8,
        s: 4,
        sl: 2,
        abelian: Some(true),
        cyclic: Some(true),
        eigen: &[(9, 21)],
        realization: real(ZI, &["h"], &[GI0], &["h^4 = -I"]),
        notes: &["stated with the same data as HC2(4)"],
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC2, 7),
        ring: "O_{-3}",
        order: 12,
        s: 6,
        sl: 2,
        abelian: Some(true),
        cyclic: Some(false),
        eigen: &[(8, 20), (4, 0), (16, 12)],
        realization: real(O3, &["g", "h"], &[NEG, DT1], &["g = -I", "h^6 = I", "g h = h g"]),
        ..BASE
    },
    // SL part C3
    CatalogEntry {
        label: lab(Family::HC3, 1),
        ring: "R_{-3,f}",
        order: 6,
        s: 2,
        sl: 5,
        abelian: Some(true),
        cyclic: Some(true),
        eigen: &[(4, 8)],
        realization: real(R32, &["h"], &[GS3], &["h^6 = I"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC3, 2),
        order: 6,
        s: 2,
        sl: 5,
        abelian: Some(false),
        cyclic: Some(false),
        eigen: &[(12, 0)],
        realization: real(ZZ, &["g", "h"], &[ROT3, SWAP], &["g^3 = I", "h^2 = I", "h g h^-1 = g^-1"]),
        notes: &["realized over Z"],
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC3, 3),
        ring: "O_{-3}",
        order: 9,
        s: 3,
        sl: 5,
        abelian: Some(true),
        cyclic: Some(false),
        realization: real(O3, &["g", "h"], &[ROT3, WI], &["g^3 = I", "h^3 = I", "g h = h g"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC3, 4),
        ring: "O_{-3}",
        order: 18,
        s: 6,
        sl: 5,
        abelian: Some(true),
        cyclic: Some(false),
        eigen: &[(4, 16)],
        realization: real(O3, &["g", "h"], &[DC3, DC6], &["g^3 = I", "h^6 = I", "g h = h g"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC3, 5),
        ring: "O_{-3}",
        order: 18,
        s: 6,
        sl: 5,
        abelian: Some(false),
        cyclic: Some(false),
        eigen: &[(8, 20)],
        field: Some("Q(√−3)"),
        ..BASE
    },
    // SL part C4
    CatalogEntry {
        label: lab(Family::HC4, 1),
        ring: "O_{-2}",
        order: 8,
        s: 2,
        sl: 3,
        abelian: Some(true),
        cyclic: Some(true),
        eigen: &[(3, 9)],
        realization: real(O2, &["h"], &[GS2], &["h^4 = -I"]),
        notes: &["second eigenvalue printed as e^{3πi/3}; stored as e^{3πi/4}"],
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC4, 2),
        ring: "R_{-1,f}",
        order: 8,
        s: 2,
        sl: 3,
        abelian: Some(true),
        cyclic: Some(false),
        eigen: &[(12, 0)],
        realization: real(ZI, &["g", "h"], &[DI, REFL2], &["g^2 = -I", "h^2 = I", "g h = h g"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC4, 3),
        order: 8,
        s: 2,
        sl: 3,
        abelian: Some(false),
        cyclic: Some(false),
        eigen: &[(12, 0)],
        realization: real(ZZ, &["g", "h"], &[ROT4, REFL], &["g^2 = -I", "h^2 = I", "h g h^-1 = g^-1"]),
        notes: &["realized over Z"],
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC4, 4),
        ring: "O_{-3}",
        order: 12,
        s: 3,
        sl: 3,
        abelian: Some(true),
        cyclic: Some(true),
        eigen: &[(10, 22)],
        realization: real(O3, &["h"], &[C12], &["h^6 = -I"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC4, 5),
        ring: "O_{-3}",
        order: 12,
        s: 3,
        sl: 3,
        abelian: Some(true),
        realization: real(O3, &["g", "h"], &[ROT4, WI], &["g^2 = -I", "h^3 = I", "g h = h g"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC4, 6),
        ring: "Z[i]",
        order: 16,
        s: 4,
        sl: 3,
        abelian: Some(true),
        cyclic: Some(false),
        eigen: &[(6, 0)],
        realization: real(ZI, &["g", "h"], &[DI, DI1], &["g^2 = -I", "h^4 = I", "g h = h g"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC4, 7),
        ring: "Z[i]",
        order: 16,
        s: 4,
        sl: 3,
        abelian: Some(true),
        cyclic: Some(false),
        eigen: &[(9, 21)],
        field: Some("Q(√2, i)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC4, 8),
        ring: "Z[i]",
        order: 16,
        s: 4,
        sl: 3,
        abelian: Some(false),
        cyclic: Some(false),
        eigen: &[(9, 21)],
        field: Some("Q(√2, i)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC4, 9),
        ring: "O_{-3}",
        order: 24,
        s: 6,
        sl: 3,
        abelian: Some(false),
        cyclic: Some(false),
        eigen: &[(8, 20)],
        field: Some("Q(√−3)"),
        ..BASE
    },
    // SL part C6
    CatalogEntry {
        label: lab(Family::HC6, 1),
        ring: "Z[i]",
        order: 12,
        s: 2,
        sl: 6,
        abelian: Some(true),
        cyclic: Some(true),
        eigen: &[(2, 10)],
        realization: real(ZI, &["h"], &[GI], &["h^6 = -I"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC6, 2),
        ring: "O_{-3}",
        order: 12,
        s: 2,
        sl: 6,
        abelian: Some(true),
        cyclic: Some(false),
        eigen: &[(12, 0)],
        realization: real(O3, &["g", "h"], &[G4, REFL], &["g^3 = -I", "h^2 = I", "g h = h g"]),
        notes: &["isomorphism type printed as C6 × C12; the group is C6 × C2 of order 12"],
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC6, 3),
        order: 12,
        s: 2,
        sl: 6,
        abelian: Some(false),
        cyclic: Some(false),
        eigen: &[(12, 0)],
        realization: real(ZZ, &["g", "h"], &[ROT6, SWAP], &["g^3 = -I", "h^2 = I", "h g h^-1 = g^-1"]),
        notes: &["realized over Z"],
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC6, 4),
        ring: "O_{-3}",
        order: 18,
        s: 3,
        sl: 6,
        abelian: Some(true),
        realization: real(O3, &["g", "h"], &[ROT6, WI], &["g^3 = -I", "h^3 = I", "g h = h g"]),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC6, 5),
        ring: "Z[i]",
        order: 24,
        s: 4,
        sl: 6,
        abelian: Some(false),
        cyclic: Some(false),
        eigen: &[(9, 21)],
        field: Some("Q(√2, i)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC6, 6),
        ring: "O_{-3}",
        order: 36,
        s: 6,
        sl: 6,
        abelian: Some(false),
        cyclic: Some(false),
        eigen: &[(8, 20)],
        field: Some("Q(√−3)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HC6, 7),
        ring: "O_{-3}",
        order: 36,
        s: 6,
        sl: 6,
        abelian: Some(true),
        cyclic: Some(false),
        eigen: &[(8, 20)],
        realization: real(O3, &["g", "h"], &[G4, DWW], &["g^3 = -I", "h^6 = I", "g h = h g"]),
        ..BASE
    },
    // SL part Q8
    CatalogEntry {
        label: lab(Family::HQ8, 1),
        ring: "Z[i]",
        order: 16,
        s: 2,
        sl: 4,
        inner: Some(true),
        eigen: &[(6, 6)],
        realization: real(
            ZI,
            &["g1", "g2", "h"],
            &[J_B1, G2I_B1, II],
            rels!(Q8_RELS; "h^2 = -I", "h g1 = g1 h", "h g2 = g2 h"),
        ),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ8, 2),
        ring: "Z[i]",
        order: 16,
        s: 2,
        sl: 4,
        inner: Some(true),
        eigen: &[(12, 0)],
        realization: real(
            ZI,
            &["g1", "g2", "h"],
            &[J_B1, G2I_B1, REFL2],
            rels!(Q8_RELS; "h^2 = I", "h g1 h^-1 = -g1", "h g2 h^-1 = -g2"),
        ),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ8, 3),
        ring: "O_{-2}",
        order: 16,
        s: 2,
        sl: 4,
        inner: Some(false),
        eigen: &[(3, 9)],
        field: Some("Q(√2, i)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ8, 4),
        ring: "R_{-2,f}",
        order: 16,
        s: 2,
        sl: 4,
        inner: Some(false),
        eigen: &[(12, 0)],
        field: Some("Q(√−2)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ8, 5),
        ring: "O_{-3}",
        order: 24,
        s: 3,
        sl: 4,
        inner: Some(true),
        realization: real(
            O3,
            &["g1", "g2", "h"],
            &[J, K8G2, WI],
            rels!(Q8_RELS; "h^3 = I", "h g1 = g1 h", "h g2 = g2 h"),
        ),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ8, 6),
        ring: "O_{-3}",
        order: 24,
        s: 3,
        sl: 4,
        inner: Some(false),
        eigen: &[(8, 0)],
        field: Some("Q(√−3)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ8, 7),
        ring: "Z[i]",
        order: 32,
        s: 4,
        sl: 4,
        inner: Some(true),
        eigen: &[(9, 21)],
        field: Some("Q(√2, i)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ8, 8),
        ring: "Z[i]",
        order: 32,
        s: 4,
        sl: 4,
        inner: Some(false),
        eigen: &[(9, 21)],
        field: Some("Q(√2, i)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ8, 9),
        ring: "Z[i]",
        order: 32,
        s: 4,
        sl: 4,
        inner: Some(false),
        eigen: &[(6, 0)],
        realization: real(
            ZI,
            &["g1", "g2", "h"],
            &[J_B1, G2I_B1, DI1],
            rels!(Q8_RELS; "h^4 = I", "h g1 h^-1 = g2", "h g2 h^-1 = -g1"),
        ),
        notes: &["second conjugation relation printed as a repeat of the first; stored as h g2 h^-1 = -g1"],
        ..BASE
    },
    // SL part Q12
    CatalogEntry {
        label: lab(Family::HQ12, 1),
        ring: "Z[i]",
        order: 24,
        s: 2,
        sl: 7,
        inner: Some(true),
        eigen: &[(6, 6)],
        field: Some("Q(√3, i)"),
        notes: &["ring printed as \"R − Z[i]\"; read as R = Z[i]"],
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ12, 2),
        ring: "O_{-3}",
        order: 24,
        s: 2,
        sl: 7,
        inner: Some(false),
        eigen: &[(4, 8)],
        realization: real(
            O3,
            &["g1", "g4", "h"],
            &[J_B1, G4, DTW],
            rels!(Q12_RELS; "h^6 = I", "h g1 h^-1 = g1 g4", "h g4 h^-1 = g4"),
        ),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ12, 3),
        ring: "O_{-3}",
        order: 24,
        s: 2,
        sl: 7,
        inner: Some(true),
        eigen: &[(2, 10)],
        field: Some("Q(√3, i)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ12, 4),
        ring: "O_{-3}",
        order: 24,
        s: 2,
        sl: 7,
        inner: Some(false),
        eigen: &[(12, 0)],
        realization: real(
            O3,
            &["g1", "g4", "h"],
            &[J_B1, G4, REFL2],
            rels!(Q12_RELS; "h^2 = I", "h g1 h^-1 = -g1", "h g4 h^-1 = g4"),
        ),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ12, 5),
        ring: "O_{-3}",
        order: 36,
        s: 3,
        sl: 7,
        inner: Some(true),
        eigen: &[(8, 8)],
        realization: real(
            O3,
            &["g1", "g4", "h"],
            &[J_B1, G4, WI],
            rels!(Q12_RELS; "h^3 = I", "h g1 = g1 h", "h g4 = g4 h"),
        ),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ12, 6),
        ring: "O_{-3}",
        order: 36,
        s: 3,
        sl: 7,
        inner: Some(true),
        eigen: &[(8, 0)],
        realization: real(
            O3,
            &["g1", "g4", "h"],
            &[J_B1, G4, D1W],
            rels!(Q12_RELS; "h^3 = I", "h g1 h^-1 = g1 g4^2", "h g4 h^-1 = g4"),
        ),
        notes: &["first conjugation relation printed without its equality sign"],
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ12, 7),
        ring: "O_{-3}",
        order: 36,
        s: 3,
        sl: 7,
        inner: Some(false),
        eigen: &[(22, 10)],
        field: Some("Q(√3, i)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ12, 8),
        ring: "Z[i]",
        order: 48,
        s: 4,
        sl: 7,
        inner: Some(false),
        eigen: &[(9, 21)],
        field: Some("Q(√2, √3, i)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ12, 9),
        ring: "O_{-3}",
        order: 72,
        s: 6,
        sl: 7,
        inner: Some(false),
        eigen: &[(0, 4)],
        realization: real(
            O3,
            &["g1", "g4", "h"],
            &[J_B1, G4, D1T],
            rels!(Q12_RELS; "h^6 = I", "h g1 h^-1 = g1 g4", "h g4 h^-1 = g4"),
        ),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HQ12, 10),
        ring: "O_{-3}",
        order: 72,
        s: 6,
        sl: 7,
        inner: Some(false),
        eigen: &[(8, 20)],
        realization: real(
            O3,
            &["g1", "g4", "h"],
            &[J_B1, G4, DWW],
            rels!(Q12_RELS; "h^6 = I", "h g1 h^-1 = -g1", "h g4 h^-1 = g4"),
        ),
        ..BASE
    },
    // SL part SL(2, F_3)
    CatalogEntry {
        label: lab(Family::HSL23, 1),
        ring: "Z[i]",
        order: 48,
        s: 2,
        sl: 8,
        inner: Some(true),
        eigen: &[(6, 6)],
        field: Some("Q(√3, i)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HSL23, 2),
        ring: "Z[i]",
        order: 48,
        s: 2,
        sl: 8,
        eigen: &[(12, 0)],
        field: Some("Q(√3, i)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HSL23, 3),
        ring: "O_{-2}",
        order: 48,
        s: 2,
        sl: 8,
        eigen: &[(3, 9)],
        field: Some("Q(√2, √3, i)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HSL23, 4),
        ring: "R_{-2,f}",
        order: 48,
        s: 2,
        sl: 8,
        eigen: &[(12, 0)],
        field: Some("Q(√−2, √−3)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HSL23, 5),
        ring: "O_{-3}",
        order: 72,
        s: 3,
        sl: 8,
        inner: Some(true),
        eigen: &[(8, 8)],
        realization: real(
            O3,
            &["g1", "g2", "g3", "h"],
            &[J, K8G2, K8G3, WI],
            rels!(K8_RELS; "h^3 = I", "h g1 = g1 h", "h g2 = g2 h", "h g3 = g3 h"),
        ),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HSL23, 6),
        ring: "O_{-3}",
        order: 72,
        s: 3,
        sl: 8,
        inner: Some(true),
        eigen: &[(8, 0)],
        field: Some("unspecified"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HSL23, 7),
        ring: "Z[i]",
        order: 96,
        s: 4,
        sl: 8,
        eigen: &[(9, 21)],
        field: Some("Q(√2, √3, i)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HSL23, 8),
        ring: "Z[i]",
        order: 96,
        s: 4,
        sl: 8,
        eigen: &[(9, 21)],
        field: Some("Q(√2, √3, i)"),
        ..BASE
    },
    CatalogEntry {
        label: lab(Family::HSL23, 9),
        ring: "Z[i]",
        order: 96,
        s: 4,
        sl: 8,
        eigen: &[(6, 0)],
        field: Some("Q(√3, i)"),
        ..BASE
    },
];

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn entry(label: CatalogLabel) -> &'static CatalogEntry {
    ENTRIES
        .iter()
        .find(|e| e.label == label)
        .expect("every valid label has an entry")
}

/// Generators of a realizable entry.
#[derive(Clone, Debug, Serialize)]
pub struct Realized {
    pub label: CatalogLabel,
    #[serde(serialize_with = "ser_ring")]
    pub ring: RingSpec,
    pub names: Vec<&'static str>,
    pub generators: Vec<Mat2>,
}

fn ser_ring<S: serde::Serializer>(r: &RingSpec, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Ring", 2)?;
    st.serialize_field("d", &r.d())?;
    st.serialize_field("f", &r.f())?;
    st.end()
}

fn instantiate(ring: RingSpec, g: &G, b1: &QuadElem) -> Result<Mat2> {
    let b1_inv = b1.inverse().ok_or(Error::NotAUnit)?;
    let e: Vec<QuadElem> = g
        .iter()
        .map(|&(a, b, p)| {
            let x = ring.elem(a, b)?;
            Ok(match p {
                1 => &x * b1,
                -1 => &x * &b1_inv,
                _ => x,
            })
        })
        .collect::<Result<_>>()?;
    Mat2::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone())
}

/// Generator matrices of `label`; `b1` must be a unit of the entry's ring.
pub fn realize(label: CatalogLabel, b1: Option<&QuadElem>) -> Result<Realized> {
    let entry = entry(label);
    let real = entry.realization.as_ref().ok_or_else(|| Error::NotRealizable {
        label: label.to_string(),
        field: entry.field.unwrap_or("unspecified").to_string(),
    })?;
    let ring = make_ring(real.d, real.f)?;
    let one = ring.one();
    let b1 = match b1 {
        None => one,
        Some(b) => {
            if !real.has_free_parameter() {
                return Err(Error::BadParameter(format!("{} has no free parameter b1", label)));
            }
            if b.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if !b.is_unit() {
                return Err(Error::BadParameter("b1 must be a unit of R".into()));
            }
            b.clone()
        }
    };
    let generators = real
        .gens
        .iter()
        .map(|g| instantiate(ring, g, &b1))
        .collect::<Result<Vec<_>>>()?;
    Ok(Realized { label, ring, names: real.names.to_vec(), generators })
}

/// Evaluates one side of a relation, e.g. "-g1 g4^2 h^-1".
fn eval_word(word: &str, names: &[&str], gens: &[Mat2], ring: RingSpec) -> Result<Mat2> {
    let word = word.trim();
    let (neg, body) = match word.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, word),
    };
    let bad = || Error::BadParameter(format!("malformed relation word {:?}", word));
    let mut acc = Mat2::identity(ring);
    for tok in body.split_whitespace() {
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (n, e.parse::<i64>().map_err(|_| bad())?),
            None => (tok, 1),
        };
        let base = if name == "I" {
            Mat2::identity(ring)
        } else {
            let i = names.iter().position(|n| *n == name).ok_or_else(bad)?;
            gens[i].clone()
        };
        let base = if exp < 0 { base.inv()? } else { base };
        acc = acc.mul(&base.pow(exp.unsigned_abs() as u32));
    }
    Ok(if neg { acc.neg() } else { acc })
}

pub fn relation_holds(rel: &str, names: &[&str], gens: &[Mat2], ring: RingSpec) -> Result<bool> {
    let (l, r) = rel
        .split_once('=')
        .ok_or_else(|| Error::BadParameter(format!("relation without '=': {}", rel)))?;
    Ok(eval_word(l, names, gens, ring)? == eval_word(r, names, gens, ring)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerifyStatus {
    Pass,
    Fail,
    NotRealizable,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyLine {
    pub label: CatalogLabel,
    pub status: VerifyStatus,
    pub expected_order: usize,
    pub order: Option<usize>,
    pub expected_s: usize,
    pub s: Option<usize>,
    pub failed_relations: Vec<&'static str>,
    pub eigen_ok: Option<bool>,
    pub recognized_as: Vec<CatalogLabel>,
    pub field: Option<&'static str>,
    pub detail: String,
}

impl std::fmt::Display for VerifyLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.status {
            VerifyStatus::NotRealizable => write!(
                f,
                "{:<10} not realizable over R (known over {})",
                self.label.to_string(),
                self.field.unwrap_or("unspecified")
            ),
            st => {
                let rec: Vec<String> = self.recognized_as.iter().map(|l| l.to_string()).collect();
                write!(
                    f,
                    "{:<10} {:<4} order {}/{} s {}/{} recognized as [{}]",
                    self.label.to_string(),
                    if st == VerifyStatus::Pass { "ok" } else { "FAIL" },
                    self.order.map_or("-".into(), |o| o.to_string()),
                    self.expected_order,
                    self.s.map_or("-".into(), |o| o.to_string()),
                    self.expected_s,
                    rec.join(", ")
                )?;
                if !self.detail.is_empty() {
                    write!(f, " ({})", self.detail)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub lines: Vec<VerifyLine>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| l.status == VerifyStatus::Fail).count()
    }

    pub fn passes(&self) -> usize {
        self.lines.iter().filter(|l| l.status == VerifyStatus::Pass).count()
    }

    /// Realizable entries recognized together with another label.
    pub fn duplicates(&self) -> Vec<(CatalogLabel, Vec<CatalogLabel>)> {
        self.lines
            .iter()
            .filter(|l| l.recognized_as.len() > 1)
            .map(|l| (l.label, l.recognized_as.clone()))
            .collect()
    }
}

pub fn verify_entry(e: &CatalogEntry) -> VerifyLine {
    let mut line = VerifyLine {
        label: e.label,
        status: VerifyStatus::NotRealizable,
        expected_order: e.order,
        order: None,
        expected_s: e.s,
        s: None,
        failed_relations: Vec::new(),
        eigen_ok: None,
        recognized_as: Vec::new(),
        field: e.field,
        detail: String::new(),
    };
    let real = match &e.realization {
        Some(r) => r,
        None => return line,
    };
    let mut problems = Vec::new();
    let run = || -> Result<(Realized, crate::matrix_group::LinearGroup)> {
        let r = realize(e.label, None)?;
        let h = close_linear(r.ring, &r.generators, DEFAULT_LINEAR_CAP)?;
        Ok((r, h))
    };
    let (r, h) = match run() {
        Ok(x) => x,
        Err(err) => {
            line.status = VerifyStatus::Fail;
            line.detail = err.to_string();
            return line;
        }
    };
    line.order = Some(h.order());
    line.s = Some(h.s);
    if h.order() != e.order {
        problems.push("order".to_string());
    }
    if h.s != e.s {
        problems.push("s".to_string());
    }
    for rel in real.relations {
        match relation_holds(rel, real.names, &r.generators, r.ring) {
            Ok(true) => {}
            Ok(false) => line.failed_relations.push(rel),
            Err(err) => problems.push(err.to_string()),
        }
    }
    if !line.failed_relations.is_empty() {
        problems.push("relations".to_string());
    }
    match gl_signature(&h) {
        Ok(sig) => {
            if !e.eigen.is_empty() {
                let ok = e
                    .eigen_pairs()
                    .iter()
                    .any(|p| sig.eigen_pairs.contains(p) || sig.eigen_pairs.contains(&p.conj()));
                line.eigen_ok = Some(ok);
                if !ok {
                    problems.push("eigenvalues".to_string());
                }
            }
        }
        Err(err) => problems.push(err.to_string()),
    }
    match classify_gl(&h) {
        Ok(rec) => {
            if !rec.matches.contains(&e.label) {
                problems.push(format!("recognized as {}", rec.label));
            }
            line.recognized_as = rec.matches;
        }
        Err(err) => problems.push(err.to_string()),
    }
    line.status = if problems.is_empty() { VerifyStatus::Pass } else { VerifyStatus::Fail };
    line.detail = problems.join("; ");
    line
}

pub fn verify_catalog() -> VerifyReport {
    VerifyReport { lines: ENTRIES.iter().map(verify_entry).collect() }
}

/// Catalog dump record.
#[derive(Clone, Debug, Serialize)]
pub struct EntrySummary {
    pub label: CatalogLabel,
    pub ring: &'static str,
    pub order: usize,
    pub s: usize,
    pub sl_part: CatalogLabel,
    pub abelian: Option<bool>,
    pub cyclic: Option<bool>,
    pub eigenvalues: Vec<EigenPair>,
    pub realizable: bool,
    pub field: Option<&'static str>,
    pub relations: Vec<&'static str>,
    pub notes: Vec<&'static str>,
}

pub fn summaries() -> Vec<EntrySummary> {
    ENTRIES
        .iter()
        .map(|e| EntrySummary {
            label: e.label,
            ring: e.ring,
            order: e.order,
            s: e.s,
            sl_part: CatalogLabel::k(e.sl),
            abelian: e.abelian,
            cyclic: e.cyclic,
            eigenvalues: e.eigen_pairs(),
            realizable: e.realizable(),
            field: e.field,
            relations: e.realization.as_ref().map(|r| r.relations.to_vec()).unwrap_or_default(),
            notes: e.notes.to_vec(),
        })
        .collect()
}

/// Affine example families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AffineFamily {
    /// Linear part K_{j+1} (j ≤ 7) or K8 (j = 8) plus up to three translations.
    K3,
    /// Translations plus τ_W ∘ diag(1, ζ_s) with W of order s modulo the
    /// first-factor translations.
    Hyperelliptic,
    /// Translations plus τ_W ∘ diag(1, ζ_s) with W in the span of the
    /// first-factor parts of the translations.
    RuledElliptic,
    /// h of order s in SL together with h_o = τ_{(U_o, V_o)} ∘ swap.
    Enriques,
}

#[derive(Clone, Debug, Default)]
pub struct FamilyParams {
    /// K3: index j in 1..=8. Other families: s in {2, 3, 4, 6}.
    pub index: u32,
    pub translations: Vec<TorusPoint>,
    /// Hyperelliptic/ruled: W on the first factor. Enriques: (U_o, V_o).
    /// K3: translation part of the first linear generator.
    pub shift: Option<TorusPoint>,
}

fn root_ring(s: u32) -> Result<(RingSpec, QuadElem)> {
    let (ring, z) = match s {
        2 => (RingSpec::integers(), (-1, 0)),
        3 => (RingSpec::eisenstein(), (-1, 1)),
        4 => (RingSpec::gaussian(), (0, 1)),
        6 => (RingSpec::eisenstein(), (0, 1)),
        _ => return Err(Error::BadParameter(format!("s = {} is not in {{2, 3, 4, 6}}", s))),
    };
    Ok((ring, ring.elem(z.0, z.1)?))
}

fn first_factor(p: &TorusPoint) -> TorusPoint {
    let c = p.coords();
    TorusPoint::new([c[0].clone(), c[1].clone(), Rational::zero(), Rational::zero()])
}

fn on_first_factor(p: &TorusPoint) -> bool {
    p.coords()[2].is_zero() && p.coords()[3].is_zero()
}

/// The subgroup of A generated by `gens`, as a set.
fn span(gens: &[TorusPoint]) -> BTreeSet<TorusPoint> {
    let mut out = BTreeSet::from([TorusPoint::zero()]);
    let mut frontier = vec![TorusPoint::zero()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.add(g);
            if out.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    out
}

pub fn family_affine(family: AffineFamily, params: &FamilyParams) -> Result<Vec<AffineAut>> {
    let mut out: Vec<AffineAut> = Vec::new();
    match family {
        AffineFamily::K3 => {
            let k = match params.index {
                1..=7 => params.index + 1,
                8 => 8,
                j => return Err(Error::BadParameter(format!("K3 family index {} not in 1..=8", j))),
            };
            if params.translations.len() > 3 {
                return Err(Error::TorsionConstraintViolated("at most three translations".into()));
            }
            let r = realize(CatalogLabel::k(k), None)?;
            for (i, g) in r.generators.into_iter().enumerate() {
                let t = if i == 0 { params.shift.clone().unwrap_or_else(TorusPoint::zero) } else { TorusPoint::zero() };
                out.push(AffineAut::new(t, g)?);
            }
            for t in &params.translations {
                out.push(AffineAut::translation(r.ring, t.clone()));
            }
        }
        AffineFamily::Hyperelliptic | AffineFamily::RuledElliptic => {
            let (ring, zeta) = root_ring(params.index)?;
            let w = params.shift.clone().unwrap_or_else(TorusPoint::zero);
            if !on_first_factor(&w) {
                return Err(Error::TorsionConstraintViolated("W must lie on the first factor".into()));
            }
            let firsts: Vec<TorusPoint> = params.translations.iter().map(first_factor).collect();
            let sp = span(&firsts);
            if family == AffineFamily::Hyperelliptic {
                if let Some(k) = (1..params.index as i64).chain([params.index as i64]).find(|&k| {
                    let in_span = sp.contains(&w.scale(k));
                    if k == params.index as i64 { !in_span } else { in_span }
                }) {
                    return Err(Error::TorsionConstraintViolated(format!(
                        "W must have order exactly {} modulo the first-factor translations (fails at {}W)",
                        params.index, k
                    )));
                }
            } else if !sp.contains(&w) {
                return Err(Error::TorsionConstraintViolated(
                    "W must lie in the span of the first-factor translations".into(),
                ));
            }
            for t in &params.translations {
                out.push(AffineAut::translation(ring, t.clone()));
            }
            out.push(AffineAut::new(w, Mat2::diag(&ring.one(), &zeta))?);
        }
        AffineFamily::Enriques => {
            let z = RingSpec::integers();
            let h: [[i64; 2]; 2] = match params.index {
                2 => [[-1, 0], [0, -1]],
                3 => [[0, -1], [1, -1]],
                4 => [[0, -1], [1, 0]],
                6 => [[1, -1], [1, 0]],
                s => return Err(Error::BadParameter(format!("s = {} is not in {{2, 3, 4, 6}}", s))),
            };
            let t = params
                .shift
                .clone()
                .unwrap_or_else(|| TorusPoint::from_ratios([(1, 2), (0, 1), (0, 1), (0, 1)]));
            let ho = AffineAut::new(t.clone(), swap(z))?;
            if t.transform(ho.int4()) == t.neg() {
                return Err(Error::TorsionConstraintViolated(
                    "L(h_o)(U_o, V_o) must differ from −(U_o, V_o)".into(),
                ));
            }
            out.push(AffineAut::linear(Mat2::from_ints(z, h))?);
            out.push(ho);
            for t in &params.translations {
                out.push(AffineAut::translation(z, t.clone()));
            }
        }
    }
    debug_assert!(close_affine(out[0].ring(), &out, DEFAULT_AFFINE_CAP).is_ok());
    Ok(out)
}

/// Family generators together with the surface type of their closure.
pub fn family_surface(family: AffineFamily, params: &FamilyParams) -> Result<SurfaceType> {
    let gens = family_affine(family, params)?;
    let h = close_affine(gens[0].ring(), &gens, DEFAULT_AFFINE_CAP)?;
    Ok(surface_type(&h).surface_type)
}
