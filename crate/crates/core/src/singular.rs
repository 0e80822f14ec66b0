//! The `b+`-singular vectors `x(b, c)`: closed-form coefficients and an
//! independent exact kernel solver.
//!
//! A singular weight space is labelled by `(b, c)` with `c >= 0` and is
//! spanned by the vectors `x_k(b, c)` over tuples `k` in `N^(n-1)` with
//! `|k| <= c`. The closed form fixes the coefficient of `x_0(b, c)` to 1;
//! the brute-force route computes the joint kernel of the simple diagonal
//! raising operators and normalizes the same way, so the two must agree
//! term by term.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::dualpair::DualPairGens;
use crate::linalg::kernel_basis;
use crate::scalar::{binomial, factorial, Scalar};
use crate::weyl::{BasisIndex, ModuleParams, WeightVector};
use crate::Error;

/// Label `(b, c)` of a singular weight space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct HwvLabel {
    pub b: i64,
    pub c: u32,
}

impl HwvLabel {
    pub fn new(b: i64, c: u32) -> Self {
        HwvLabel { b, c }
    }
}

/// Index tuple `k = (k_1, ..., k_{n-1})` with `|k| <= c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct KTuple(pub Vec<u32>);

impl KTuple {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn zero(n: usize) -> Self {
        KTuple(vec![0; n - 1])
    }
}

/// All tuples with `|k| <= c`, in lexicographic order.
pub fn k_tuples(n: usize, c: u32) -> Vec<KTuple> {
    fn rec(len: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<KTuple>) {
        if prefix.len() == len {
            out.push(KTuple(prefix.clone()));
            return;
        }
        for k in 0..=budget {
            prefix.push(k);
            rec(len, budget - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n - 1, c, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Dimension of the `(b, c)` weight space: `C(c + n - 1, n - 1)`.
pub fn weight_space_dim(n: usize, c: u32) -> u64 {
    binomial(c as u64 + n as u64 - 1, n as u64 - 1)
        .to_i64()
        .expect("binomial fits") as u64
}

/// The basis index of `x_k(b, c)`.
pub fn basis_index_for(
    params: &ModuleParams,
    label: HwvLabel,
    k: &KTuple,
) -> Result<BasisIndex, Error> {
    let n = params.n();
    if k.0.len() != n - 1 {
        return Err(Error::BadIndex(format!(
            "k-tuple has length {}, expected {}",
            k.0.len(),
            n - 1
        )));
    }
    let total = k.total();
    if total > label.c {
        return Err(Error::BadIndex(format!(
            "|k| = {total} exceeds c = {}",
            label.c
        )));
    }
    let mut offsets = vec![0i64; params.m()];
    for i in 0..n - 1 {
        offsets[i] = -(k.0[i] as i64);
    }
    offsets[n - 1] = label.b + total as i64;
    offsets[n] = -label.b - label.c as i64 + k.0[0] as i64;
    for i in 1..n - 1 {
        offsets[n + i] = k.0[i] as i64;
    }
    offsets[2 * n - 1] = (label.c - total) as i64;
    BasisIndex::new(params, offsets)
}

/// The `x_k(b, c)` for all `|k| <= c`, in lexicographic `k`-order.
pub fn weight_space_basis(
    params: &ModuleParams,
    label: HwvLabel,
) -> Result<Vec<BasisIndex>, Error> {
    k_tuples(params.n(), label.c)
        .iter()
        .map(|k| basis_index_for(params, label, k))
        .collect()
}

/// Closed-form coefficient `kappa(k)` of `x_k(b, c)` relative to the
/// normalization `kappa(0) = 1`.
pub fn kappa(params: &ModuleParams, label: HwvLabel, k: &KTuple) -> Result<Scalar, Error> {
    let total = k.total();
    if total > label.c {
        return Err(Error::BadIndex(format!(
            "|k| = {total} exceeds c = {}",
            label.c
        )));
    }
    let mut multinomial = Scalar::one();
    let mut partial = k.0[0] as u64;
    for t in 1..k.0.len() {
        let next = partial + k.0[t] as u64;
        multinomial *= &binomial(next, partial);
        partial = next;
    }
    let mut numer = Scalar::one();
    let mut denom = factorial(total as u64);
    let base = Scalar::from_int(label.b) + params.a1();
    for j in 1..=total {
        numer *= &Scalar::from_int(label.c as i64 + 1 - j as i64);
        denom *= &(&base + &Scalar::from_int(j as i64));
    }
    Ok(multinomial * numer / denom)
}

/// The singular vector `x(b, c) = sum_k kappa(k) x_k(b, c)`.
pub fn hwv_closed_form(params: &ModuleParams, label: HwvLabel) -> Result<WeightVector, Error> {
    let mut out = WeightVector::zero();
    for k in k_tuples(params.n(), label.c) {
        let idx = basis_index_for(params, label, &k)?;
        out.add_term(idx, kappa(params, label, &k)?);
    }
    Ok(out)
}

/// Independent oracle: assembles the exact matrices of the raising
/// generators on the `(b, c)` weight space and computes their joint kernel
/// by fraction-free elimination. Errors unless the kernel has dimension 1.
pub fn hwv_bruteforce(
    params: &ModuleParams,
    gens: &DualPairGens,
    label: HwvLabel,
) -> Result<WeightVector, Error> {
    let basis = weight_space_basis(params, label)?;
    let images: Vec<Vec<WeightVector>> = gens
        .raise_b
        .iter()
        .map(|g| {
            basis
                .iter()
                .map(|idx| g.apply(params, &WeightVector::basis(idx.clone())))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for gen_images in &images {
        let mut targets: Vec<&BasisIndex> = gen_images
            .iter()
            .flat_map(|w| w.terms().map(|(idx, _)| idx))
            .collect();
        targets.sort();
        targets.dedup();
        for t in targets {
            rows.push(
                gen_images
                    .iter()
                    .map(|w| w.coeff(t).cloned().unwrap_or_else(Scalar::zero))
                    .collect(),
            );
        }
    }

    let kernel = kernel_basis(&rows, basis.len());
    if kernel.len() != 1 {
        return Err(Error::KernelDimension {
            expected: 1,
            found: kernel.len(),
        });
    }
    // Normalize the coefficient of x_0(b, c) (the lexicographically first
    // tuple, column 0) to 1.
    let lead = kernel[0][0].inv()?;
    Ok(basis
        .into_iter()
        .zip(&kernel[0])
        .map(|(idx, coeff)| (idx, coeff * &lead))
        .collect())
}

/// Checks `X_{-i} . x(b, c) = 0` for the interior lowering generators
/// `2 <= i <= n - 2` (1-based); vacuously true for `n <= 3`.
pub fn check_lower_annihilation(
    params: &ModuleParams,
    gens: &DualPairGens,
    label: HwvLabel,
) -> Result<bool, Error> {
    let v = hwv_closed_form(params, label)?;
    for i in 1..params.n().saturating_sub(2) {
        if !gens.lower_b[i].apply(params, &v)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
