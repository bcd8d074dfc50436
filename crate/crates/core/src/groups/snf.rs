use crate::error::{Error, Result};

use super::AbelianGroup;

/// `left · A · right = diag(diagonal)` with unimodular `left`, `right` and
/// the nonzero diagonal entries forming a divisibility chain.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<i64>,
    pub left: Vec<Vec<i64>>,
    pub right: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn smith_normal_form(matrix: &[Vec<i64>], ncols: usize) -> SmithForm {
    let m = matrix.len();
    let k = ncols;
    let mut a: Vec<Vec<i64>> = matrix.to_vec();
    for row in &a {
        assert_eq!(row.len(), k, "ragged relation matrix");
    }
    let mut p = identity(m);
    let mut q = identity(k);

    let swap_rows = |a: &mut Vec<Vec<i64>>, p: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a.swap(i, j);
        p.swap(i, j);
    };
    let swap_cols = |a: &mut Vec<Vec<i64>>, q: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in q.iter_mut() {
            row.swap(i, j);
        }
    };

    let mut t = 0;
    while t < m.min(k) {
        // smallest nonzero entry of the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..k {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        swap_rows(&mut a, &mut p, t, bi);
        swap_cols(&mut a, &mut q, t, bj);

        loop {
            let piv = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let f = a[i][t] / piv;
                if f != 0 {
                    for j in 0..k {
                        a[i][j] -= f * a[t][j];
                    }
                    for j in 0..m {
                        p[i][j] -= f * p[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..k {
                let f = a[t][j] / piv;
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for row in q.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                let mut best = (t, t);
                for i in t..m {
                    if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..k {
                    if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                swap_rows(&mut a, &mut p, t, best.0);
                swap_cols(&mut a, &mut q, t, best.1);
                continue;
            }
            // enforce divisibility against the rest of the block
            let bad = (t + 1..m).find(|&i| (t + 1..k).any(|j| a[i][j] % piv != 0));
            match bad {
                Some(i) => {
                    for j in 0..k {
                        a[t][j] += a[i][j];
                    }
                    for j in 0..m {
                        p[t][j] += p[i][j];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for j in 0..k {
                a[t][j] = -a[t][j];
            }
            for j in 0..m {
                p[t][j] = -p[t][j];
            }
        }
        t += 1;
    }

    let diagonal = (0..m.min(k)).map(|i| a[i][i]).collect();
    SmithForm {
        diagonal,
        left: p,
        right: q,
    }
}

/// The finite abelian group `ℤ^ngens / ⟨rows of relations⟩`, in
/// invariant-factor form.
pub fn abelianize(relations: &[Vec<i64>], ngens: usize) -> Result<AbelianGroup> {
    let snf = smith_normal_form(relations, ngens);
    let mut diag = snf.diagonal;
    diag.resize(ngens, 0);
    if diag.iter().any(|&d| d == 0) {
        return Err(Error::MalformedGroup(
            "relations do not define a finite group".into(),
        ));
    }
    let factors: Vec<u32> = diag.iter().map(|&d| d as u32).collect();
    AbelianGroup::new(&factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(ds: &[i64]) -> Vec<Vec<i64>> {
        (0..ds.len())
            .map(|i| (0..ds.len()).map(|j| if i == j { ds[i] } else { 0 }).collect())
            .collect()
    }

    fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = b[0].len();
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn abelianize_examples() {
        assert_eq!(abelianize(&diag(&[2, 2, 2]), 3).unwrap().invariant_factors(), &[2, 2, 2]);
        assert_eq!(abelianize(&diag(&[2, 6]), 2).unwrap().invariant_factors(), &[2, 6]);
        assert_eq!(abelianize(&diag(&[4, 6]), 2).unwrap().invariant_factors(), &[2, 12]);
        assert_eq!(abelianize(&diag(&[6, 1]), 2).unwrap().invariant_factors(), &[6]);
    }

    #[test]
    fn infinite_presentation_rejected() {
        assert!(abelianize(&[vec![2, 0]], 2).is_err());
    }

    #[test]
    fn transforms_reproduce_diagonal() {
        let a = vec![vec![4, 6, 2], vec![2, 8, 10], vec![0, 3, 9], vec![6, 0, 12]];
        let snf = smith_normal_form(&a, 3);
        let d = mul(&mul(&snf.left, &a), &snf.right);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, snf.diagonal[i]);
                } else {
                    assert_eq!(x, 0);
                }
            }
        }
        let nz: Vec<i64> = snf.diagonal.iter().copied().filter(|&x| x != 0).collect();
        for w in nz.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }
}
