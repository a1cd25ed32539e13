//! Smith normal form over the integers with transformation certificates.

use super::LatticeError;

/// Result of a Smith normal form computation on an `r × c` integer matrix
/// `M`: unimodular `U` (r × r) and `V` (c × c) with `U·M·V` diagonal, the
/// diagonal `d₁ | d₂ | …` positive and each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    /// Nonzero diagonal invariants `d₁ | d₂ | …`, all positive.
    pub invariants: Vec<i64>,
    /// Row transform `U`, unimodular.
    pub row_transform: Vec<Vec<i64>>,
    /// Column transform `V`, unimodular.
    pub col_transform: Vec<Vec<i64>>,
}

impl SmithDecomposition {
    /// Rank of the original matrix.
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Invariants greater than one, i.e. the torsion part when the matrix
    /// is a relation matrix.
    pub fn torsion(&self) -> Vec<i64> {
        self.invariants.iter().copied().filter(|&d| d > 1).collect()
    }

    /// Checks the certificate: `U·M·V = diag(invariants)` and both
    /// transforms have determinant ±1.
    pub fn verify(&self, m: &[Vec<i64>]) -> bool {
        let rows = self.row_transform.len();
        let cols = self.col_transform.len();
        if m.len() != rows || m.iter().any(|r| r.len() != cols) {
            return false;
        }
        let mi: Vec<Vec<i128>> = to_i128(m);
        let u = to_i128(&self.row_transform);
        let v = to_i128(&self.col_transform);
        let umv = mat_mul(&mat_mul(&u, &mi), &v);
        for (i, row) in umv.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let expect = if i == j && i < self.invariants.len() {
                    self.invariants[i] as i128
                } else {
                    0
                };
                if x != expect {
                    return false;
                }
            }
        }
        det(&u).map(|d| d.abs() == 1).unwrap_or(false)
            && det(&v).map(|d| d.abs() == 1).unwrap_or(false)
    }
}

fn to_i128(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    m.iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect()
}

fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = a.len();
    let k = if n > 0 { a[0].len() } else { 0 };
    let m = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = vec![vec![0i128; m]; n];
    for i in 0..n {
        for t in 0..k {
            let av = a[i][t];
            if av == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = out[i][j]
                    .checked_add(av.checked_mul(b[t][j]).expect("overflow in matrix product"))
                    .expect("overflow in matrix product");
            }
        }
    }
    out
}

/// Exact determinant by fraction-free Bareiss elimination.
pub(crate) fn det(m: &[Vec<i128>]) -> Result<i128, LatticeError> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                    .ok_or(LatticeError::Overflow)?;
                a[i][j] = num / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

struct SnfWork {
    a: Vec<Vec<i128>>,
    u: Vec<Vec<i128>>,
    v: Vec<Vec<i128>>,
    rows: usize,
    cols: usize,
}

impl SnfWork {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        for row in &mut self.v {
            row.swap(i, j);
        }
    }

    /// row i -= q * row j
    fn row_sub(&mut self, i: usize, j: usize, q: i128) {
        if q == 0 {
            return;
        }
        for t in 0..self.cols {
            self.a[i][t] -= q * self.a[j][t];
        }
        for t in 0..self.rows {
            self.u[i][t] -= q * self.u[j][t];
        }
    }

    /// col i -= q * col j
    fn col_sub(&mut self, i: usize, j: usize, q: i128) {
        if q == 0 {
            return;
        }
        for row in &mut self.a {
            row[i] -= q * row[j];
        }
        for row in &mut self.v {
            row[i] -= q * row[j];
        }
    }

    fn negate_row(&mut self, i: usize) {
        for t in 0..self.cols {
            self.a[i][t] = -self.a[i][t];
        }
        for t in 0..self.rows {
            self.u[i][t] = -self.u[i][t];
        }
    }
}

/// Computes the Smith normal form of an integer matrix.
///
/// Rows may be empty (zero-column matrices are fine); the matrix must be
/// rectangular.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Result<SmithDecomposition, LatticeError> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    if m.iter().any(|r| r.len() != cols) {
        return Err(LatticeError::RaggedMatrix);
    }
    let mut w = SnfWork {
        a: to_i128(m),
        u: identity(rows),
        v: identity(cols),
        rows,
        cols,
    };

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // Find the nonzero entry of least magnitude in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if w.a[i][j] != 0
                    && pivot.map_or(true, |(pi, pj)| w.a[i][j].abs() < w.a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        // Clear row t and column t by Euclidean steps.
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t] != 0 {
                    let q = w.a[i][t].div_euclid(w.a[t][t]);
                    w.row_sub(i, t, q);
                    if w.a[i][t] != 0 {
                        // Remainder is strictly smaller; promote it to pivot.
                        w.swap_rows(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if w.a[t][j] != 0 {
                    let q = w.a[t][j].div_euclid(w.a[t][t]);
                    w.col_sub(j, t, q);
                    if w.a[t][j] != 0 {
                        w.swap_cols(t, j);
                        dirty = true;
                    }
                }
            }
            if !dirty
                && (t + 1..rows).all(|i| w.a[i][t] == 0)
                && (t + 1..cols).all(|j| w.a[t][j] == 0)
            {
                break;
            }
        }

        // Make the pivot divide every remaining entry.
        let mut offender = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if w.a[i][j] % w.a[t][t] != 0 {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            // Fold the offending row in and redo this pivot.
            w.row_sub(t, i, -1);
            continue;
        }

        if w.a[t][t] < 0 {
            w.negate_row(t);
        }
        t += 1;
    }

    let invariants = (0..n)
        .map(|i| w.a[i][i])
        .take_while(|&d| d != 0)
        .map(|d| i64::try_from(d).map_err(|_| LatticeError::Overflow))
        .collect::<Result<Vec<_>, _>>()?;

    let from_i128 = |m: Vec<Vec<i128>>| -> Result<Vec<Vec<i64>>, LatticeError> {
        m.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| i64::try_from(x).map_err(|_| LatticeError::Overflow))
                    .collect()
            })
            .collect()
    };

    Ok(SmithDecomposition {
        invariants,
        row_transform: from_i128(w.u)?,
        col_transform: from_i128(w.v)?,
    })
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diag_2_3_has_invariants_1_6() {
        let m = vec![vec![2, 0], vec![0, 3]];
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.invariants, vec![1, 6]);
        assert!(s.verify(&m));
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let m = vec![vec![0, 0], vec![0, 0]];
        let s = smith_normal_form(&m).unwrap();
        assert!(s.invariants.is_empty());
        assert_eq!(s.rank(), 0);
        assert!(s.verify(&m));
    }

    #[test]
    fn empty_matrices_are_accepted() {
        let s = smith_normal_form(&[]).unwrap();
        assert!(s.invariants.is_empty());
        let m: Vec<Vec<i64>> = vec![vec![], vec![]];
        let s = smith_normal_form(&m).unwrap();
        assert!(s.invariants.is_empty());
    }

    #[test]
    fn divisibility_chain_holds() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]];
        let s = smith_normal_form(&m).unwrap();
        for w in s.invariants.windows(2) {
            assert_eq!(w[1] % w[0], 0, "invariants {:?}", s.invariants);
        }
        assert!(s.verify(&m));
    }

    #[test]
    fn certificate_detects_tampering() {
        let m = vec![vec![2, 0], vec![0, 3]];
        let mut s = smith_normal_form(&m).unwrap();
        s.invariants = vec![1, 5];
        assert!(!s.verify(&m));
    }
}
