//! Generators of the dual pair `(a, b)` inside `sl(2n)` and the sub-Cartan
//! weight data the correspondence is expressed in.
//!
//! The `sl2` side is spanned by `X = sum E[n+i][i]`, `Y = sum E[i][n+i]`,
//! `H = sum (E[i][i] - E[n+i][n+i])`; the `sln` side is embedded diagonally
//! in the two blocks, with simple raising generators
//! `X_i = E[i-1][i] + E[n+i-1][n+i]`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::scalar::Scalar;
use crate::weyl::{BasisIndex, ModuleParams, Operator, WeightVector};
use crate::Error;

/// The generator operators of both members of the dual pair, plus the
/// Levi raising set and the intertwiner building blocks `Z'`, `Z''`.
#[derive(Debug, Clone)]
pub struct DualPairGens {
    pub x: Operator,
    pub y: Operator,
    pub h: Operator,
    /// Simple raising generators of the diagonal `sln`, `n - 1` of them.
    pub raise_b: Vec<Operator>,
    /// Simple lowering generators of the diagonal `sln`.
    pub lower_b: Vec<Operator>,
    /// `H_i = [X_i, X_{-i}]`.
    pub cartan_b: Vec<Operator>,
    /// Strict upper-triangular matrix units of both diagonal blocks.
    pub levi_raise: Vec<Operator>,
    /// `Z' = E[n][1] + E[2n][n+1]` (1-based), degree-1 part of the intertwiner.
    pub zprime: Operator,
    /// `Z''`, the degree-2 correction; the zero operator when `n = 2`.
    pub zdoubleprime: Operator,
}

/// Builds every generator as a lazy Weyl word via `E[i][j] = q_i p_j`.
pub fn build_dual_pair(params: &ModuleParams) -> Result<DualPairGens, Error> {
    let n = params.n();
    if n < 2 {
        return Err(Error::BadParams(format!("n must be >= 2, got {n}")));
    }

    let mut x = Operator::zero();
    let mut y = Operator::zero();
    let mut h = Operator::zero();
    for i in 0..n {
        x = x.add(&Operator::e(n + i, i));
        y = y.add(&Operator::e(i, n + i));
        h = h.add(&Operator::e(i, i).sub(&Operator::e(n + i, n + i)));
    }

    let mut raise_b = Vec::with_capacity(n - 1);
    let mut lower_b = Vec::with_capacity(n - 1);
    let mut cartan_b = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let up = Operator::e(i, i + 1).add(&Operator::e(n + i, n + i + 1));
        let down = Operator::e(i + 1, i).add(&Operator::e(n + i + 1, n + i));
        cartan_b.push(up.commutator(&down));
        raise_b.push(up);
        lower_b.push(down);
    }

    let mut levi_raise = Vec::new();
    for block in [0, n] {
        for r in 0..n {
            for c in r + 1..n {
                levi_raise.push(Operator::e(block + r, block + c));
            }
        }
    }

    let zprime = Operator::e(n - 1, 0).add(&Operator::e(2 * n - 1, n));
    let mut zdoubleprime = Operator::zero();
    for i in 1..=n.saturating_sub(2) {
        let left = Operator::e(i, 0).add(&Operator::e(n + i, n));
        let right = Operator::e(n - 1, i).add(&Operator::e(2 * n - 1, n + i));
        zdoubleprime = zdoubleprime.add(&left.compose(&right));
    }

    Ok(DualPairGens {
        x,
        y,
        h,
        raise_b,
        lower_b,
        cartan_b,
        levi_raise,
        zprime,
        zdoubleprime,
    })
}

/// Weight of a simultaneous eigenvector under `H` and the diagonal-`sln`
/// Cartan generators `H_1 .. H_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubWeight {
    /// Eigenvalue of `H`.
    pub theta_weight: Scalar,
    /// Eigenvalues of `H_1 .. H_{n-1}`.
    pub b_weight: Vec<Scalar>,
}

/// Eigenvalue of `op` on `v`, verified exactly; errors when `v` is zero or
/// not an eigenvector.
pub fn eigenvalue(
    params: &ModuleParams,
    op: &Operator,
    v: &WeightVector,
    op_name: &str,
) -> Result<Scalar, Error> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let w = op.apply(params, v)?;
    let (idx, coeff) = v.terms().next().expect("nonzero vector has a term");
    let lambda = match w.coeff(idx) {
        Some(c) => c / coeff,
        None => Scalar::zero(),
    };
    if w == v.scale(&lambda) {
        Ok(lambda)
    } else {
        Err(Error::NotEigenvector(String::from(op_name)))
    }
}

/// The `(h_theta, h_n)` weight of a simultaneous eigenvector.
pub fn sub_weight(
    params: &ModuleParams,
    gens: &DualPairGens,
    v: &WeightVector,
) -> Result<SubWeight, Error> {
    let theta_weight = eigenvalue(params, &gens.h, v, "H")?;
    let b_weight = gens
        .cartan_b
        .iter()
        .enumerate()
        .map(|(i, hi)| eigenvalue(params, hi, v, &format!("H_{}", i + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SubWeight {
        theta_weight,
        b_weight,
    })
}

/// All admissible indices in the box annihilated by every strict
/// upper-triangular Levi generator. By the block decomposition these are
/// exactly the offsets `(0, ..., 0, b, -b, 0, ..., 0)`.
pub fn levi_singulars(params: &ModuleParams, box_bound: i64) -> Vec<BasisIndex> {
    crate::weyl::enumerate_box(params, box_bound)
        .into_iter()
        .filter(|idx| {
            let v = WeightVector::basis(idx.clone());
            params
                .levi_annihilates(idx, &v)
                .unwrap_or(false)
        })
        .collect()
}

impl ModuleParams {
    fn levi_annihilates(&self, _idx: &BasisIndex, v: &WeightVector) -> Result<bool, Error> {
        let n = self.n();
        for block in [0, n] {
            for r in 0..n {
                for c in r + 1..n {
                    if !crate::weyl::apply_e(self, block + r, block + c, v)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}
