//! Fraction-free Gaussian elimination over the rationals.
//!
//! Rows are scaled to integer rows, reduced with Bareiss' algorithm (every
//! division is exact), and the kernel is read off by rational
//! back-substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A row-echelon form of an integer matrix together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    ncols: usize,
}

fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

impl Echelon {
    pub fn new(matrix: &[Vec<BigRational>], ncols: usize) -> Self {
        let mut a: Vec<Vec<BigInt>> = matrix
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "ragged matrix");
                integer_row(r)
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut k = 0;
        for col in 0..ncols {
            if k == a.len() {
                break;
            }
            let Some(p) = (k..a.len()).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(k, p);
            for i in k + 1..a.len() {
                for j in col + 1..ncols {
                    let v = &a[k][col] * &a[i][j] - &a[i][col] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][col] = BigInt::zero();
            }
            prev = a[k][col].clone();
            pivots.push(col);
            k += 1;
        }
        a.truncate(k);
        Echelon { rows: a, pivots, ncols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); self.ncols];
                x[f] = BigRational::one();
                for (r, &pc) in self.pivots.iter().enumerate().rev() {
                    let row = &self.rows[r];
                    let mut acc = BigRational::zero();
                    for j in pc + 1..self.ncols {
                        if !row[j].is_zero() && !x[j].is_zero() {
                            acc += BigRational::from_integer(row[j].clone()) * &x[j];
                        }
                    }
                    x[pc] = -acc / BigRational::from_integer(row[pc].clone());
                }
                x
            })
            .collect()
    }
}

pub fn kernel(matrix: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    Echelon::new(matrix, ncols).kernel()
}

pub fn rank(matrix: &[Vec<BigRational>], ncols: usize) -> usize {
    Echelon::new(matrix, ncols).rank()
}
