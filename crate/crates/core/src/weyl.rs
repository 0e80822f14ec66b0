//! The module `N(a1, a2)` inside `sl(2n)`: basis indexing, the Weyl-algebra
//! action, sparse weight vectors, and a lazy operator algebra.
//!
//! The anchor tuple is `a = (-1, ..., -1, a1, a2, 0, ..., 0)` with `n - 1`
//! entries of `-1` and `n - 1` trailing zeros. A basis vector `x(b)` is
//! stored by its integer offset vector `b - a`, which keeps hashing,
//! ordering, and the coordinate-sum constraint purely integral.
//!
//! Generator positions are 0-based throughout: `q_i`/`p_i` for
//! `i in 0..2n`, and `E[i][j] = q_i p_j` embeds `gl(2n)` into the Weyl
//! algebra.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::scalar::Scalar;
use crate::Error;

/// Parameters `(n, a1, a2)` of the module `N(a1, a2)` inside `sl(2n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleParams {
    n: usize,
    a1: Scalar,
    a2: Scalar,
}

impl ModuleParams {
    /// Requires `n >= 2` and non-integer `a1`, `a2`.
    pub fn new(n: usize, a1: Scalar, a2: Scalar) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::BadParams(format!("n must be >= 2, got {n}")));
        }
        if a1.is_integer() {
            return Err(Error::IntegerParameter(String::from("a1")));
        }
        if a2.is_integer() {
            return Err(Error::IntegerParameter(String::from("a2")));
        }
        Ok(ModuleParams { n, a1, a2 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of the ambient matrices, `m = 2n`.
    pub fn m(&self) -> usize {
        2 * self.n
    }

    pub fn a1(&self) -> &Scalar {
        &self.a1
    }

    pub fn a2(&self) -> &Scalar {
        &self.a2
    }

    /// Generic regime: `a1 - a2` is not an integer.
    pub fn generic(&self) -> bool {
        !(&self.a1 - &self.a2).is_integer()
    }

    /// True when coordinate `i` of any admissible tuple is a negative
    /// integer (the leading block of `-1` anchors).
    pub fn is_leading(&self, i: usize) -> bool {
        i + 1 < self.n
    }

    /// True for the trailing block of `0` anchors.
    pub fn is_trailing(&self, i: usize) -> bool {
        i > self.n
    }

    /// The tuple entry `b_i = a_i + offset` as an exact scalar.
    pub fn coordinate_value(&self, i: usize, offset: i64) -> Scalar {
        let off = Scalar::from_int(offset);
        if self.is_leading(i) {
            Scalar::from_int(-1) + off
        } else if i + 1 == self.n {
            &self.a1 + &off
        } else if i == self.n {
            &self.a2 + &off
        } else {
            off
        }
    }
}

/// Integer offset vector labelling a basis vector `x(a + offsets)`.
///
/// The coordinate sum of an admissible index is zero; intermediate indices
/// produced inside a `q_i p_j` word may break the sum, never the sign
/// constraints.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex {
    offsets: Vec<i64>,
}

impl BasisIndex {
    /// Checks length and the sign constraints on the integer coordinates.
    pub fn new(params: &ModuleParams, offsets: Vec<i64>) -> Result<Self, Error> {
        if offsets.len() != params.m() {
            return Err(Error::BadIndex(format!(
                "offset vector has length {}, expected {}",
                offsets.len(),
                params.m()
            )));
        }
        for (i, &off) in offsets.iter().enumerate() {
            if params.is_leading(i) && off > 0 {
                return Err(Error::BadIndex(format!(
                    "coordinate {i} must have offset <= 0, got {off}"
                )));
            }
            if params.is_trailing(i) && off < 0 {
                return Err(Error::BadIndex(format!(
                    "coordinate {i} must have offset >= 0, got {off}"
                )));
            }
        }
        Ok(BasisIndex { offsets })
    }

    /// The anchor index `x(a)` itself.
    pub fn anchor(params: &ModuleParams) -> Self {
        BasisIndex {
            offsets: vec![0; params.m()],
        }
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    /// Admissible means the coordinate sum constraint holds on top of the
    /// sign constraints checked at construction.
    pub fn is_admissible(&self) -> bool {
        self.offsets.iter().sum::<i64>() == 0
    }

    fn shifted(&self, i: usize, by: i64) -> Self {
        let mut offsets = self.offsets.clone();
        offsets[i] += by;
        BasisIndex { offsets }
    }
}

/// Finitely supported linear combination of basis vectors, with exact
/// coefficients and no stored zeros. Iteration order is lexicographic on
/// the offset vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightVector {
    terms: BTreeMap<BasisIndex, Scalar>,
}

impl WeightVector {
    pub fn zero() -> Self {
        WeightVector::default()
    }

    pub fn basis(index: BasisIndex) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(index, Scalar::one());
        WeightVector { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, index: &BasisIndex) -> Option<&Scalar> {
        self.terms.get(index)
    }

    /// Adds `coeff * x(index)`, dropping the term if it cancels to zero.
    pub fn add_term(&mut self, index: BasisIndex, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &WeightVector) -> WeightVector {
        let mut out = self.clone();
        for (idx, c) in other.terms() {
            out.add_term(idx.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WeightVector) -> WeightVector {
        let mut out = self.clone();
        for (idx, c) in other.terms() {
            out.add_term(idx.clone(), -c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> WeightVector {
        if s.is_zero() {
            return WeightVector::zero();
        }
        WeightVector {
            terms: self
                .terms
                .iter()
                .map(|(idx, c)| (idx.clone(), c * s))
                .collect(),
        }
    }
}

impl FromIterator<(BasisIndex, Scalar)> for WeightVector {
    fn from_iter<I: IntoIterator<Item = (BasisIndex, Scalar)>>(iter: I) -> Self {
        let mut out = WeightVector::zero();
        for (idx, c) in iter {
            out.add_term(idx, c);
        }
        out
    }
}

fn check_position(params: &ModuleParams, i: usize) -> Result<(), Error> {
    if i < params.m() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            index: i,
            len: params.m(),
        })
    }
}

/// Action of the multiplication generator `q_i`: shifts coordinate `i` up,
/// with coefficient `b_i + 1` on the negative-integer coordinates and 1
/// elsewhere.
pub fn apply_q(params: &ModuleParams, i: usize, v: &WeightVector) -> Result<WeightVector, Error> {
    check_position(params, i)?;
    let mut out = WeightVector::zero();
    for (idx, c) in v.terms() {
        let off = idx.offsets()[i];
        let factor = if params.is_leading(i) {
            // b_i + 1 = (-1 + off) + 1 = off; off = 0 annihilates.
            Scalar::from_int(off)
        } else {
            Scalar::one()
        };
        out.add_term(idx.shifted(i, 1), c * &factor);
    }
    Ok(out)
}

/// Action of the derivation generator `p_j`: shifts coordinate `j` down,
/// with coefficient 1 on the negative-integer coordinates and `b_j`
/// elsewhere.
pub fn apply_p(params: &ModuleParams, j: usize, v: &WeightVector) -> Result<WeightVector, Error> {
    check_position(params, j)?;
    let mut out = WeightVector::zero();
    for (idx, c) in v.terms() {
        let off = idx.offsets()[j];
        let factor = if params.is_leading(j) {
            Scalar::one()
        } else {
            params.coordinate_value(j, off)
        };
        out.add_term(idx.shifted(j, -1), c * &factor);
    }
    Ok(out)
}

/// Matrix-unit action `E[i][j] = q_i p_j`; restores the coordinate sum.
pub fn apply_e(
    params: &ModuleParams,
    i: usize,
    j: usize,
    v: &WeightVector,
) -> Result<WeightVector, Error> {
    let w = apply_p(params, j, v)?;
    apply_q(params, i, &w)
}

/// The Cartan weight of `v`: the vector `(b_i - b_{i+1})` over the `2n - 1`
/// simple coroots, shared by every term of `v`.
pub fn h_weight(params: &ModuleParams, v: &WeightVector) -> Result<Vec<Scalar>, Error> {
    let mut shared: Option<Vec<Scalar>> = None;
    for (idx, _) in v.terms() {
        let wt: Vec<Scalar> = (0..params.m() - 1)
            .map(|i| {
                params.coordinate_value(i, idx.offsets()[i])
                    - params.coordinate_value(i + 1, idx.offsets()[i + 1])
            })
            .collect();
        match &shared {
            None => shared = Some(wt),
            Some(prev) if *prev == wt => {}
            Some(_) => return Err(Error::NotWeightVector),
        }
    }
    shared.ok_or(Error::ZeroVector)
}

/// An atomic Weyl-algebra generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    Q(usize),
    P(usize),
}

/// A formal finite sum of scaled generator words, applied lazily.
///
/// A word `[g_0, g_1, ..., g_k]` acts as the composition `g_0 g_1 ... g_k`,
/// i.e. the rightmost atom is applied first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Operator {
    words: Vec<(Scalar, Vec<Atom>)>,
}

impl Operator {
    pub fn zero() -> Self {
        Operator::default()
    }

    pub fn identity() -> Self {
        Operator {
            words: vec![(Scalar::one(), Vec::new())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn q(i: usize) -> Self {
        Operator {
            words: vec![(Scalar::one(), vec![Atom::Q(i)])],
        }
    }

    pub fn p(j: usize) -> Self {
        Operator {
            words: vec![(Scalar::one(), vec![Atom::P(j)])],
        }
    }

    /// The matrix unit `E[i][j] = q_i p_j`.
    pub fn e(i: usize, j: usize) -> Self {
        Operator {
            words: vec![(Scalar::one(), vec![Atom::Q(i), Atom::P(j)])],
        }
    }

    pub fn add(&self, other: &Operator) -> Operator {
        let mut words = self.words.clone();
        words.extend_from_slice(&other.words);
        Operator { words }
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Operator {
        if s.is_zero() {
            return Operator::zero();
        }
        Operator {
            words: self
                .words
                .iter()
                .map(|(c, w)| (c * s, w.clone()))
                .collect(),
        }
    }

    /// Composition `self . other`: `other` acts first.
    pub fn compose(&self, other: &Operator) -> Operator {
        let mut words = Vec::with_capacity(self.words.len() * other.words.len());
        for (cl, wl) in &self.words {
            for (cr, wr) in &other.words {
                let mut w = wl.clone();
                w.extend_from_slice(wr);
                words.push((cl * cr, w));
            }
        }
        Operator { words }
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &Operator) -> Operator {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn apply(&self, params: &ModuleParams, v: &WeightVector) -> Result<WeightVector, Error> {
        let mut out = WeightVector::zero();
        for (c, word) in &self.words {
            let mut cur = v.clone();
            for atom in word.iter().rev() {
                if cur.is_zero() {
                    break;
                }
                cur = match atom {
                    Atom::Q(i) => apply_q(params, *i, &cur)?,
                    Atom::P(j) => apply_p(params, *j, &cur)?,
                };
            }
            out = out.add(&cur.scale(c));
        }
        Ok(out)
    }
}

/// All admissible indices with every offset in `[-box_bound, box_bound]`.
pub fn enumerate_box(params: &ModuleParams, box_bound: i64) -> Vec<BasisIndex> {
    let m = params.m();
    let mut out = Vec::new();
    let mut offsets = vec![0i64; m];
    fn rec(
        params: &ModuleParams,
        box_bound: i64,
        pos: usize,
        offsets: &mut Vec<i64>,
        out: &mut Vec<BasisIndex>,
    ) {
        if pos == offsets.len() {
            if offsets.iter().sum::<i64>() == 0 {
                out.push(BasisIndex::new(params, offsets.clone()).unwrap());
            }
            return;
        }
        let (lo, hi) = if params.is_leading(pos) {
            (-box_bound, 0)
        } else if params.is_trailing(pos) {
            (0, box_bound)
        } else {
            (-box_bound, box_bound)
        };
        for off in lo..=hi {
            offsets[pos] = off;
            rec(params, box_bound, pos + 1, offsets, out);
        }
        offsets[pos] = 0;
    }
    rec(params, box_bound, 0, &mut offsets, &mut out);
    out
}

/// A uniformly sampled admissible index with offsets in the given box; the
/// free `a2` coordinate absorbs the sum constraint.
pub fn random_basis_index(
    params: &ModuleParams,
    box_bound: i64,
    rng: &mut impl Rng,
) -> BasisIndex {
    let m = params.m();
    let mut offsets = vec![0i64; m];
    for i in 0..m {
        if i == params.n() {
            continue;
        }
        offsets[i] = if params.is_leading(i) {
            rng.gen_range(-box_bound..=0)
        } else if params.is_trailing(i) {
            rng.gen_range(0..=box_bound)
        } else {
            rng.gen_range(-box_bound..=box_bound)
        };
    }
    offsets[params.n()] = -offsets.iter().sum::<i64>();
    BasisIndex::new(params, offsets).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params_n2() -> ModuleParams {
        ModuleParams::new(
            2,
            Scalar::new(1, 2).unwrap(),
            Scalar::new(1, 3).unwrap(),
        )
        .unwrap()
    }

    fn idx(params: &ModuleParams, offsets: &[i64]) -> BasisIndex {
        BasisIndex::new(params, offsets.to_vec()).unwrap()
    }

    fn basis(params: &ModuleParams, offsets: &[i64]) -> WeightVector {
        WeightVector::basis(idx(params, offsets))
    }

    #[test]
    fn params_validation() {
        assert!(ModuleParams::new(1, Scalar::new(1, 2).unwrap(), Scalar::new(1, 3).unwrap())
            .is_err());
        assert!(matches!(
            ModuleParams::new(2, Scalar::from_int(4), Scalar::new(1, 3).unwrap()),
            Err(Error::IntegerParameter(_))
        ));
        let p = params_n2();
        assert!(p.generic());
        let q = ModuleParams::new(
            2,
            Scalar::new(3, 2).unwrap(),
            Scalar::new(1, 2).unwrap(),
        )
        .unwrap();
        assert!(!q.generic());
    }

    #[test]
    fn q_annihilates_at_the_sign_wall() {
        // Anchor b = (-1, 1/2, 1/3, 0): q_0 hits b_0 + 1 = 0.
        let p = params_n2();
        let anchor = basis(&p, &[0, 0, 0, 0]);
        assert!(apply_q(&p, 0, &anchor).unwrap().is_zero());
        let up = apply_q(&p, 1, &anchor).unwrap();
        assert_eq!(up, WeightVector::basis(idx(&p, &[0, 1, 0, 0])));
        let up = apply_q(&p, 3, &anchor).unwrap();
        assert_eq!(up, WeightVector::basis(idx(&p, &[0, 0, 0, 1])));
    }

    #[test]
    fn p_annihilates_at_zero_and_scales_elsewhere() {
        let p = params_n2();
        let anchor = basis(&p, &[0, 0, 0, 0]);
        assert!(apply_p(&p, 3, &anchor).unwrap().is_zero());
        let down = apply_p(&p, 1, &anchor).unwrap();
        let mut expect = WeightVector::zero();
        expect.add_term(idx(&p, &[0, -1, 0, 0]), Scalar::new(1, 2).unwrap());
        assert_eq!(down, expect);
        let down = apply_p(&p, 0, &anchor).unwrap();
        assert_eq!(down, WeightVector::basis(idx(&p, &[-1, 0, 0, 0])));
    }

    #[test]
    fn matrix_unit_action_restores_the_sum() {
        let p = params_n2();
        let anchor = basis(&p, &[0, 0, 0, 0]);
        // E[1][2] = q_1 p_2 on x(-1, 1/2, 1/3, 0): coefficient 1/3.
        let w = apply_e(&p, 1, 2, &anchor).unwrap();
        let mut expect = WeightVector::zero();
        expect.add_term(idx(&p, &[0, 1, -1, 0]), Scalar::new(1, 3).unwrap());
        assert_eq!(w, expect);
        // E[0][1] kills: q_0 at b_0 = -1.
        assert!(apply_e(&p, 0, 1, &anchor).unwrap().is_zero());
        // Diagonal E[2][2] is multiplication by b_2 = 1/3.
        let w = apply_e(&p, 2, 2, &anchor).unwrap();
        assert_eq!(w, anchor.scale(&Scalar::new(1, 3).unwrap()));
        for (index, _) in w.terms() {
            assert!(index.is_admissible());
        }
    }

    #[test]
    fn h_weight_of_the_anchor() {
        let p = params_n2();
        let anchor = basis(&p, &[0, 0, 0, 0]);
        let wt = h_weight(&p, &anchor).unwrap();
        assert_eq!(
            wt,
            vec![
                Scalar::new(-3, 2).unwrap(),
                Scalar::new(1, 6).unwrap(),
                Scalar::new(1, 3).unwrap()
            ]
        );
        let mixed = anchor.add(&basis(&p, &[-1, 1, 0, 0]));
        assert!(matches!(h_weight(&p, &mixed), Err(Error::NotWeightVector)));
        assert!(matches!(
            h_weight(&p, &WeightVector::zero()),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn canonical_weyl_commutator() {
        let p = params_n2();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let v = WeightVector::basis(random_basis_index(&p, 3, &mut rng));
            for i in 0..4 {
                for j in 0..4 {
                    let c = Operator::p(j).commutator(&Operator::q(i));
                    let got = c.apply(&p, &v).unwrap();
                    let expect = if i == j { v.clone() } else { WeightVector::zero() };
                    assert_eq!(got, expect, "[p_{j}, q_{i}]");
                }
            }
        }
    }

    #[test]
    fn gl_commutator_on_anchor() {
        let p = params_n2();
        let v = basis(&p, &[0, 0, 0, 0]);
        // [E01, E10] = E00 - E11 acts by b_0 - b_1.
        let c = Operator::e(0, 1).commutator(&Operator::e(1, 0));
        let got = c.apply(&p, &v).unwrap();
        assert_eq!(got, v.scale(&Scalar::new(-3, 2).unwrap()));
        // [A, A] = 0.
        let a = Operator::e(0, 1).add(&Operator::e(2, 3).scale(&Scalar::new(2, 5).unwrap()));
        assert!(a.commutator(&a).apply(&p, &v).unwrap().is_zero());
    }

    #[test]
    fn enumerate_box_respects_constraints() {
        let p = params_n2();
        for idx in enumerate_box(&p, 2) {
            assert!(idx.is_admissible());
            assert!(idx.offsets()[0] <= 0);
            assert!(idx.offsets()[3] >= 0);
        }
    }

    #[test]
    fn degree_one_in_a_box() {
        // Within a finite box, distinct admissible indices have distinct
        // Cartan weights.
        for n in [2usize, 3] {
            let p = ModuleParams::new(
                n,
                Scalar::new(1, 2).unwrap(),
                Scalar::new(1, 3).unwrap(),
            )
            .unwrap();
            let all = enumerate_box(&p, if n == 2 { 4 } else { 2 });
            let mut seen = alloc::collections::BTreeMap::new();
            for idx in all {
                let wt = h_weight(&p, &WeightVector::basis(idx.clone())).unwrap();
                if let Some(prev) = seen.insert(wt, idx.clone()) {
                    panic!("weight collision between {:?} and {:?}", prev, idx);
                }
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_offsets_n2() -> impl Strategy<Value = Vec<i64>> {
            // Admissible offsets for n = 2: (le, x, y, ge) with sum 0.
            (-3i64..=0, -3i64..=3, 0i64..=3).prop_map(|(l, x, t)| {
                let y = -(l + x + t);
                alloc::vec![l, x, y, t]
            })
        }

        proptest! {
            #[test]
            fn commutator_matches_pointwise_definition(
                offs in arb_offsets_n2(),
                i in 0usize..4, j in 0usize..4, k in 0usize..4, l in 0usize..4,
            ) {
                let p = params_n2();
                let v = WeightVector::basis(BasisIndex::new(&p, offs).unwrap());
                let a = Operator::e(i, j);
                let b = Operator::e(k, l);
                let lhs = a.commutator(&b).apply(&p, &v).unwrap();
                let ab = a.apply(&p, &b.apply(&p, &v).unwrap()).unwrap();
                let ba = b.apply(&p, &a.apply(&p, &v).unwrap()).unwrap();
                prop_assert_eq!(lhs, ab.sub(&ba));
            }

            #[test]
            fn e_action_preserves_admissibility(
                offs in arb_offsets_n2(),
                i in 0usize..4, j in 0usize..4,
            ) {
                let p = params_n2();
                let v = WeightVector::basis(BasisIndex::new(&p, offs).unwrap());
                let w = apply_e(&p, i, j, &v).unwrap();
                for (idx, c) in w.terms() {
                    prop_assert!(idx.is_admissible());
                    prop_assert!(!c.is_zero());
                }
            }
        }
    }
}
