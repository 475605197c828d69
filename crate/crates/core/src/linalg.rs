//! Dense complex linear algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_traits::Zero;

use crate::scalar::{cr, modulus, Real, C};

pub type Mat<T> = DMatrix<C<T>>;
pub type Vector<T> = DVector<C<T>>;

/// Kronecker product with row-major subsystem ordering (`a` is the slow index).
pub fn kron<T: Real>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    a.kronecker(b)
}

pub fn kron_vec<T: Real>(a: &Vector<T>, b: &Vector<T>) -> Vector<T> {
    a.kronecker(b)
}

pub fn identity<T: Real>(d: usize) -> Mat<T> {
    Mat::identity(d, d)
}

pub fn hermitize<T: Real>(m: &Mat<T>) -> Mat<T> {
    (m + m.adjoint()) * cr(T::lit(0.5))
}

pub fn trace<T: Real>(m: &Mat<T>) -> C<T> {
    m.diagonal().iter().fold(C::zero(), |acc, &z| acc + z)
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff<T: Real>(a: &Mat<T>, b: &Mat<T>) -> T {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| modulus(x - y))
        .fold(T::zero(), |m, v| if v > m { v } else { m })
}

pub fn hermiticity_deviation<T: Real>(m: &Mat<T>) -> T {
    max_abs_diff(m, &m.adjoint())
}

pub fn unitarity_deviation<T: Real>(u: &Mat<T>) -> T {
    if !u.is_square() {
        return T::max_value().unwrap_or_else(T::one);
    }
    max_abs_diff(&(u.adjoint() * u), &identity(u.nrows()))
}

fn finite<T: Real>(m: &Mat<T>) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

fn solve_shifted<T: Real>(h: &Mat<T>, shift: T) -> Option<SymmetricEigen<C<T>, nalgebra::Dyn>> {
    let eps = T::default_epsilon();
    let shifted = h + identity::<T>(h.nrows()) * cr(shift);
    let mut eig = SymmetricEigen::try_new(shifted.clone(), eps, 10_000)
        .or_else(|| SymmetricEigen::try_new(shifted, eps * T::lit(1e3), 100_000))?;
    if !eig.eigenvalues.iter().all(|v| v.is_finite()) || !finite(&eig.eigenvectors) {
        return None;
    }
    eig.eigenvalues.iter_mut().for_each(|v| *v -= shift);
    Some(eig)
}

/// nalgebra's solver with an iteration budget and a looser second pass.
/// Some exactly sparse, highly degenerate inputs (e.g. `|Φ⁺⟩⟨Φ⁺|^{⊗3}`) make
/// it return NaN; those are retried on `H + cI` for a few shifts `c`.
fn hermitian_eigen<T: Real>(m: &Mat<T>) -> SymmetricEigen<C<T>, nalgebra::Dyn> {
    let h = hermitize(m);
    let scale = h.iter().fold(T::one(), |acc, z| acc.max(modulus(*z)));
    [0.0, 1.0, -0.618, 2.5]
        .iter()
        .find_map(|&c| solve_shifted(&h, T::lit(c) * scale))
        .expect("Hermitian eigensolver failed to converge")
}

/// Eigendecomposition of the Hermitian part of `m`, eigenvalues descending.
/// Eigenvector columns are phase-fixed by [`fix_phase`].
pub fn eigh<T: Real>(m: &Mat<T>) -> (Vec<T>, Mat<T>) {
    let eig = hermitian_eigen(m);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = Mat::zeros(m.nrows(), m.ncols());
    for (dst, &src) in order.iter().enumerate() {
        let mut col: Vector<T> = eig.eigenvectors.column(src).into_owned();
        fix_phase(&mut col);
        vectors.set_column(dst, &col);
    }
    (values, vectors)
}

/// Eigenvalues of the Hermitian part of `m`, descending.
pub fn eigvalsh<T: Real>(m: &Mat<T>) -> Vec<T> {
    let mut values: Vec<T> = hermitian_eigen(m).eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    values
}

/// Eigenvalues in `[-1e-10, 0)` (or the type's precision floor) are treated as
/// round-off and set to zero. Larger negative values are left alone so that
/// callers validating positivity still see them.
pub fn clamp_spectrum<T: Real>(values: &mut [T]) {
    let floor = -T::tol(1e-10);
    for v in values.iter_mut() {
        if *v < T::zero() && *v >= floor {
            *v = T::zero();
        }
    }
}

/// Index of the first component whose modulus exceeds a small threshold.
pub fn leading_index<T: Real>(v: &Vector<T>) -> Option<usize> {
    let cut = T::tol(1e-12);
    v.iter().position(|z| modulus(*z) > cut)
}

/// Rotates the global phase so that the leading component is real positive.
/// Returns the phase factor that was divided out.
pub fn fix_phase<T: Real>(v: &mut Vector<T>) -> C<T> {
    match leading_index(v) {
        Some(i) => {
            let z = v[i];
            let phase = z / cr(modulus(z));
            v.iter_mut().for_each(|x| *x /= phase);
            phase
        }
        None => cr(T::one()),
    }
}

/// Unitary whose first column is the unit vector `v`, completed by
/// Gram-Schmidt over the computational basis.
pub fn complete_to_unitary<T: Real>(v: &Vector<T>) -> Mat<T> {
    let d = v.len();
    let mut cols: Vec<Vector<T>> = Vec::with_capacity(d);
    cols.push(v.normalize());
    let keep = T::lit(0.5) / T::lit(d as f64).sqrt();
    for e in 0..d {
        if cols.len() == d {
            break;
        }
        let mut w = Vector::<T>::zeros(d);
        w[e] = cr(T::one());
        // two passes of classical Gram-Schmidt for stability
        for _ in 0..2 {
            for q in &cols {
                let overlap = q.dotc(&w);
                w -= q * overlap;
            }
        }
        let norm = w.norm();
        if norm > keep {
            cols.push(w / cr(norm));
        }
    }
    Mat::from_columns(&cols)
}

/// Thin SVD `m = Σ_i s_i u_i v_i†` with `min(rows, cols)` terms, unordered.
///
/// One-sided (Hestenes) Jacobi on the taller orientation. nalgebra's complex
/// bidiagonal SVD is not used: on small-norm inputs it can return singular
/// values that are off in the fifth digit.
pub fn thin_svd<T: Real>(m: &Mat<T>) -> (Vec<T>, Vec<Vector<T>>, Vec<Vector<T>>) {
    if m.nrows() < m.ncols() {
        let (values, left, right) = jacobi_svd(&m.adjoint());
        return (values, right, left);
    }
    jacobi_svd(m)
}

/// Orthogonalizes the columns of a tall `m` by plane rotations, `m V = U`,
/// so that `s_j = ‖U_j‖`, `u_j = U_j / s_j` and `v_j = V_j`.
fn jacobi_svd<T: Real>(m: &Mat<T>) -> (Vec<T>, Vec<Vector<T>>, Vec<Vector<T>>) {
    let (rows, cols) = m.shape();
    let mut u = m.clone();
    let mut v = identity::<T>(cols);
    let eps = T::default_epsilon();
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = u.column(p).norm_squared();
                let beta = u.column(q).norm_squared();
                let gamma = u.column(p).dotc(&u.column(q));
                let g = modulus(gamma);
                if g == T::zero() || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // rotate columns p and e^{-iφ}·q, with γ = |γ| e^{iφ}
                let phase = (gamma / cr(g)).conj();
                let zeta = (beta - alpha) / (T::lit(2.0) * g);
                let sign = if zeta >= T::zero() { T::one() } else { -T::one() };
                let t = sign / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for target in [&mut u, &mut v] {
                    let x: Vector<T> = target.column(p).into_owned();
                    let y: Vector<T> = target.column(q).into_owned() * phase;
                    target.set_column(p, &(&x * cr(c) - &y * cr(s)));
                    target.set_column(q, &(&x * cr(s) + &y * cr(c)));
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let values: Vec<T> = (0..cols).map(|j| u.column(j).norm()).collect();
    let top = values.iter().fold(T::zero(), |a, &b| a.max(b));
    let cutoff = top * eps * T::lit((rows + cols) as f64);
    let mut left: Vec<Vector<T>> = Vec::with_capacity(cols);
    let mut pending = Vec::new();
    for (j, &s) in values.iter().enumerate() {
        if s > cutoff && s > T::zero() {
            left.push(u.column(j) / cr(s));
        } else {
            pending.push(j);
            left.push(Vector::zeros(rows));
        }
    }
    complete_slots(&mut left, &pending);
    let right = (0..cols).map(|j| v.column(j).into_owned()).collect();
    (values, left, right)
}

/// Fills `slots` of an orthonormal family with unit vectors orthogonal to
/// every other member, by Gram-Schmidt on the standard basis.
fn complete_slots<T: Real>(family: &mut [Vector<T>], slots: &[usize]) {
    let Some(dim) = family.first().map(|v| v.len()) else { return };
    let keep = T::lit(0.5) / T::lit(dim as f64).sqrt();
    let mut e = 0;
    for &slot in slots {
        while e < dim {
            let mut w = basis_vector::<T>(dim, e);
            e += 1;
            for _ in 0..2 {
                for (j, q) in family.iter().enumerate() {
                    if j != slot {
                        let overlap = q.dotc(&w);
                        w -= q * overlap;
                    }
                }
            }
            let norm = w.norm();
            if norm > keep {
                family[slot] = w / cr(norm);
                break;
            }
        }
    }
}

/// Cyclic shift `|i> -> |i+1 mod d>`.
pub fn shift<T: Real>(d: usize, steps: usize) -> Mat<T> {
    let mut m = Mat::zeros(d, d);
    for i in 0..d {
        m[((i + steps) % d, i)] = cr(T::one());
    }
    m
}

pub fn outer<T: Real>(a: &Vector<T>, b: &Vector<T>) -> Mat<T> {
    a * b.adjoint()
}

pub fn basis_vector<T: Real>(d: usize, i: usize) -> Vector<T> {
    let mut v = Vector::zeros(d);
    v[i] = cr(T::one());
    v
}
