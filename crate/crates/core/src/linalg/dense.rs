use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::jacobi_eigen;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;
pub type RMat = DMatrix<f64>;

/// Eigenvalues ascending with eigenvectors as matching columns.
#[derive(Clone, Debug)]
pub struct Eigen<M> {
    pub values: Vec<f64>,
    pub vectors: M,
}

/// Real symmetric eigendecomposition, sorted ascending.
pub fn sym_eigen(m: &RMat) -> Eigen<RMat> {
    let n = m.nrows();
    let sym = (m + m.transpose()) * 0.5;
    let (values, vectors) = match sym.clone().try_symmetric_eigen(1e-15, 10_000) {
        Some(e) => (
            e.eigenvalues.iter().copied().collect::<Vec<_>>(),
            e.eigenvectors,
        ),
        None => {
            let (vals, vecs) = jacobi_eigen(sym.as_slice(), n);
            (vals, RMat::from_row_slice(n, n, &vecs))
        }
    };
    sort_eigen(values, vectors)
}

fn sort_eigen<T: nalgebra::Scalar>(values: Vec<f64>, vectors: DMatrix<T>) -> Eigen<DMatrix<T>> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let cols: Vec<_> = order
        .iter()
        .map(|&i| vectors.column(i).into_owned())
        .collect();
    Eigen {
        values: order.iter().map(|&i| values[i]).collect(),
        vectors: DMatrix::from_columns(&cols),
    }
}

/// Hermitian eigendecomposition, sorted ascending. Uses the library routine
/// and falls back to Jacobi on the real embedding `[[Re, -Im], [Im, Re]]`.
pub fn hermitian_eigen(h: &CMat) -> Eigen<CMat> {
    let herm = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    match herm.clone().try_symmetric_eigen(1e-15, 10_000) {
        Some(e) => sort_eigen(e.eigenvalues.iter().copied().collect(), e.eigenvectors),
        None => hermitian_eigen_jacobi(&herm),
    }
}

/// Jacobi route for Hermitian matrices, exposed for cross-checking.
pub fn hermitian_eigen_jacobi(h: &CMat) -> Eigen<CMat> {
    let n = h.nrows();
    let mut emb = vec![0.0; 4 * n * n];
    let m = 2 * n;
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            emb[i * m + j] = z.re;
            emb[i * m + j + n] = -z.im;
            emb[(i + n) * m + j] = z.im;
            emb[(i + n) * m + j + n] = z.re;
        }
    }
    let (_, vecs) = jacobi_eigen(&emb, m);
    // Each complex eigenvector appears twice, as [a; b] and [-b; a]. Pick n
    // of the 2n real vectors greedily by largest residual after complex
    // Gram-Schmidt against those already chosen.
    let mut candidates: Vec<CVec> = (0..m)
        .map(|k| {
            CVec::from_fn(n, |i, _| {
                Complex64::new(vecs[i * m + k], vecs[(i + n) * m + k])
            })
        })
        .collect();
    let mut chosen: Vec<CVec> = Vec::with_capacity(n);
    while chosen.len() < n {
        let (best, _) = candidates
            .iter()
            .enumerate()
            .map(|(k, v)| (k, v.norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("candidates remain");
        let v = candidates.swap_remove(best);
        let v = &v / Complex64::new(v.norm(), 0.0);
        for c in candidates.iter_mut() {
            let proj = v.dotc(c);
            *c -= &v * proj;
        }
        chosen.push(v);
    }
    let values: Vec<f64> = chosen.iter().map(|v| v.dotc(&(h * v)).re).collect();
    sort_eigen(values, CMat::from_columns(&chosen))
}

/// Singular values in descending order.
pub fn singular_values(m: &RMat) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `rel_tol` times the largest.
pub fn numeric_rank(m: &RMat, rel_tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&top) if top > 0.0 => s.iter().filter(|&&x| x > rel_tol * top).count(),
        _ => 0,
    }
}

/// Spectral norm.
pub fn operator_norm(m: &CMat) -> f64 {
    m.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Factor `G = Lᵀ L` of a symmetric PSD matrix, one row of `L` per retained
/// eigenvalue. Eigenvalues in `[-clip, 0]` are dropped; anything more
/// negative is rejected with the offending eigenvalue.
pub fn psd_factor(g: &RMat, clip: f64) -> Result<RMat, f64> {
    let e = sym_eigen(g);
    if let Some(&min) = e.values.first() {
        if min < -clip {
            return Err(min);
        }
    }
    let rows: Vec<_> = e
        .values
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > 0.0)
        .map(|(k, &l)| (e.vectors.column(k) * l.sqrt()).transpose())
        .collect();
    if rows.is_empty() {
        return Ok(RMat::zeros(0, g.ncols()));
    }
    Ok(RMat::from_rows(&rows))
}

pub fn complex(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
