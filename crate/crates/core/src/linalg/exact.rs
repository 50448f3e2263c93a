use crate::field::Field;

/// Row-reduce in place to reduced row echelon form; returns pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].try_inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in 0..cols {
                let d = f.clone() * m[r][j].clone();
                m[i][j] = m[i][j].clone() - d;
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    rref(&mut m.to_vec()).len()
}

/// Basis of the right null space `{x : m·x = 0}`, one vector per free column.
pub fn kernel<F: Field>(m: &[Vec<F>]) -> Vec<Vec<F>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = m.to_vec();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// One solution of `a·x = b`, or `None` if the system is inconsistent.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, x)| row.iter().cloned().chain([x.clone()]).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![F::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

/// Determinant by Gaussian elimination.
pub fn determinant<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det = det * a[col][col].clone();
        let inv = a[col][col].try_inv().expect("pivot is nonzero");
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone() * inv.clone();
            for j in col..n {
                let d = f.clone() * a[col][j].clone();
                a[i][j] = a[i][j].clone() - d;
            }
        }
    }
    det
}

pub fn mat_vec<F: Field>(m: &[Vec<F>], v: &[F]) -> Vec<F> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn q(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = q(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        assert_eq!(rank(&m), 2);
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&m, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn determinant_matches_cofactor() {
        let m = q(&[&[2, -1, 0], &[1, 3, 2], &[0, 5, -4]]);
        // 2(-12-10) + 1(-4-0) = -48
        assert_eq!(determinant(&m), BigRational::from_integer((-48).into()));
    }
}
