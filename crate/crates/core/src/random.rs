//! Seeded random states, unitaries and channels for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::Result;
use crate::linalg::{self, Mat, Vector};
use crate::qstate::{DensityOperator, PureState, QuantumChannel, SystemLayout};
use crate::scalar::{c, cr, modulus, Real, C};

/// Deterministic generator used throughout tests and the CLI.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(T::lit(re), T::lit(im))
}

pub fn ginibre<T: Real, R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Mat<T> {
    Mat::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-random state vector.
pub fn pure_state<T: Real, R: Rng + ?Sized>(layout: &SystemLayout, rng: &mut R) -> PureState<T> {
    let d = layout.total_dim();
    let v = Vector::from_fn(d, |_, _| gaussian(rng));
    PureState::normalized(layout.clone(), v).expect("gaussian vector is nonzero")
}

/// Density operator `G G† / Tr[G G†]` with `G` a `d × rank` Ginibre matrix.
pub fn density<T: Real, R: Rng + ?Sized>(layout: &SystemLayout, rank: usize, rng: &mut R) -> DensityOperator<T> {
    let d = layout.total_dim();
    let g = ginibre::<T, R>(d, rank.max(1), rng);
    let m = &g * g.adjoint();
    let t = linalg::trace(&m).re;
    DensityOperator::from_parts_unchecked(layout.clone(), linalg::hermitize(&(m * cr(T::one() / t))))
}

/// Haar-random unitary (QR of a Ginibre matrix with the phase of `R` fixed).
pub fn unitary<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Mat<T> {
    let qr = ginibre::<T, R>(d, d, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..d {
        let z = r[(j, j)];
        let n = modulus(z);
        if n > T::zero() {
            let phase = z / cr(n);
            let mut col = q.column_mut(j);
            col *= phase;
        }
    }
    q
}

/// Random CPTP map with `kraus_count` operators, cut from a random isometry.
pub fn channel<T: Real, R: Rng + ?Sized>(d: usize, kraus_count: usize, rng: &mut R) -> QuantumChannel<T> {
    let k = kraus_count.max(1);
    let u = unitary::<T, R>(d * k, rng);
    let kraus = (0..k).map(|i| u.view((i * d, 0), (d, d)).into_owned()).collect();
    QuantumChannel::new(kraus, vec![], vec![]).expect("isometry blocks are trace preserving")
}

/// Uniform (Dirichlet(1,…,1)) point on the probability simplex.
pub fn probabilities<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<f64> {
    let draws: Vec<f64> = (0..len).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|x| x / total).collect()
}

/// Bipartite pure state on `left ⊗ right` with the given Schmidt spectrum
/// (padded or truncated to the smaller side) and random local bases.
pub fn with_spectrum<T: Real, R: Rng + ?Sized>(
    left: &SystemLayout,
    right: &SystemLayout,
    spectrum: &[f64],
    rng: &mut R,
) -> Result<PureState<T>> {
    let dl = left.total_dim();
    let dr = right.total_dim();
    let ul = unitary::<T, R>(dl, rng);
    let ur = unitary::<T, R>(dr, rng);
    let mut amps = Vector::zeros(dl * dr);
    for (i, &p) in spectrum.iter().enumerate().take(dl.min(dr)) {
        let term = linalg::kron_vec(&ul.column(i).into_owned(), &ur.column(i).into_owned());
        amps += term * cr(T::lit(p.max(0.0).sqrt()));
    }
    PureState::normalized(left.concat(right)?, amps)
}
