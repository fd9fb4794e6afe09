//! Exact arithmetic over Z_n, permutations, integer matrices, Smith normal
//! form and solution counting for homogeneous linear systems mod n.
//!
//! Everything here is integer-exact; there is no floating point anywhere in
//! this crate.

/// Euclidean gcd on non-negative operands.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Reduce `v` into the canonical range `[0, n)`.
pub fn reduce_mod(v: i64, n: i64) -> i64 {
    let r = v % n;
    if r < 0 {
        r + n
    } else {
        r
    }
}

/// True when `v` is invertible mod `n`.
pub fn is_unit(v: i64, n: i64) -> bool {
    gcd(reduce_mod(v, n), n) == 1
}

/// Inverse of `v` mod `n` via the extended Euclidean algorithm.
/// Returns `None` when `v` is not a unit.
pub fn inv_mod(v: i64, n: i64) -> Option<i64> {
    let v = reduce_mod(v, n);
    let (mut r0, mut r1) = (n, v);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 == 1 {
        Some(reduce_mod(t0, n))
    } else {
        None
    }
}

/// A bijection on `{0, .., n-1}` stored by its image vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from images; `None` if not a bijection.
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `self` after `other`: (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation {
            images: (0..self.images.len())
                .map(|x| self.apply(other.apply(x)))
                .collect(),
        }
    }

    /// Iterated image `self^k(x)`.
    pub fn power_apply(&self, x: usize, k: usize) -> usize {
        let mut y = x;
        for _ in 0..k {
            y = self.apply(y);
        }
        y
    }

    /// Order in the symmetric group: lcm of the cycle lengths, >= 1.
    pub fn order(&self) -> usize {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut ord: usize = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            ord = ord / gcd_usize(ord, len) * len;
        }
        ord.max(1)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }
}

fn gcd_usize(a: usize, b: usize) -> usize {
    gcd(a as i64, b as i64) as usize
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn from_rows(data: Vec<Vec<i64>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows,
            cols,
            entries: data.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (r, c): (usize, usize)) -> &i64 {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i64 {
        &mut self.entries[r * self.cols + c]
    }
}

/// Invariant factors d_1 | d_2 | ... | d_r of `m` (positive, rank many).
/// The zero matrix yields an empty sequence.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<i64> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let bound = rows.min(cols);
    let mut k = 0;
    while k < bound {
        // pivot: entry of minimal nonzero |value| in the trailing block
        let mut piv: Option<(usize, usize)> = None;
        for r in k..rows {
            for c in k..cols {
                let v = a[(r, c)].abs();
                if v != 0 && piv.map_or(true, |p| v < a[p].abs()) {
                    piv = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = piv else { break };
        swap_rows(&mut a, k, pr);
        swap_cols(&mut a, k, pc);
        if a[(k, k)] < 0 {
            for c in k..cols {
                a[(k, c)] = -a[(k, c)];
            }
        }
        // clear the pivot row and column by division with remainder;
        // restart whenever a remainder strictly shrinks the pivot
        let mut dirty = false;
        for r in k + 1..rows {
            let q = a[(r, k)].div_euclid(a[(k, k)]);
            if q != 0 {
                for c in k..cols {
                    a[(r, c)] -= q * a[(k, c)];
                }
            }
            if a[(r, k)] != 0 {
                dirty = true;
            }
        }
        for c in k + 1..cols {
            let q = a[(k, c)].div_euclid(a[(k, k)]);
            if q != 0 {
                for r in k..rows {
                    a[(r, c)] -= q * a[(r, k)];
                }
            }
            if a[(k, c)] != 0 {
                dirty = true;
            }
        }
        if dirty {
            continue; // smaller pivot now exists in the block
        }
        // divisibility: pivot must divide every remaining entry
        let mut fixed = true;
        'scan: for r in k + 1..rows {
            for c in k + 1..cols {
                if a[(r, c)] % a[(k, k)] != 0 {
                    for cc in k..cols {
                        let v = a[(r, cc)];
                        a[(k, cc)] += v;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            k += 1;
        }
    }
    (0..bound)
        .map(|i| a[(i, i)].abs())
        .take_while(|&d| d != 0)
        .collect()
}

fn swap_rows(a: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        for c in 0..a.cols {
            let t = a[(i, c)];
            a[(i, c)] = a[(j, c)];
            a[(j, c)] = t;
        }
    }
}

fn swap_cols(a: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        for r in 0..a.rows {
            let t = a[(r, i)];
            a[(r, i)] = a[(r, j)];
            a[(r, j)] = t;
        }
    }
}

/// Number of solutions of `m x = 0` over Z_n in the full column space:
/// `n^(v - r) * prod gcd(d_i, n)` with `v` columns and invariant factors
/// `d_i`. Entries are reduced into `[0, n)` before the normal form is taken.
pub fn count_homogeneous_solutions(m: &IntMatrix, n: i64) -> u64 {
    assert!(n >= 2, "modulus must be at least 2");
    let mut red = m.clone();
    for v in red.entries.iter_mut() {
        *v = reduce_mod(*v, n);
    }
    let divisors = smith_normal_form(&red);
    let rank = divisors.len();
    let free = m.cols() - rank;
    let mut count: u128 = 1;
    for _ in 0..free {
        count = count
            .checked_mul(n as u128)
            .expect("solution count overflow");
    }
    for d in divisors {
        count = count
            .checked_mul(gcd(d, n) as u128)
            .expect("solution count overflow");
    }
    u64::try_from(count).expect("solution count exceeds u64")
}

/// Rank of `m` over the field Z_p (p prime), by Gaussian elimination.
/// Used as an independent cross-check of the SNF-based count.
pub fn rank_mod_prime(m: &IntMatrix, p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| reduce_mod(m[(r, c)], p)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(pr) = (rank..m.rows()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = inv_mod(a[rank][col], p).expect("prime modulus");
        for c in col..m.cols() {
            a[rank][c] = reduce_mod(a[rank][c] * inv, p);
        }
        for r in 0..m.rows() {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for c in col..m.cols() {
                    a[r][c] = reduce_mod(a[r][c] - f * a[rank][c], p);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_identity() {
        assert_eq!(smith_normal_form(&IntMatrix::identity(2)), vec![1, 1]);
    }

    #[test]
    fn snf_rank_one() {
        let m = IntMatrix::from_rows(vec![vec![2, 4], vec![4, 8]]);
        assert_eq!(smith_normal_form(&m), vec![2]);
    }

    #[test]
    fn snf_zero_matrix() {
        assert_eq!(smith_normal_form(&IntMatrix::zero(3, 5)), Vec::<i64>::new());
    }

    #[test]
    fn snf_divisibility_chain() {
        let m = IntMatrix::from_rows(vec![
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let d = smith_normal_form(&m);
        assert_eq!(d, vec![1, 3, 21]);
        for w in d.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn count_trivial_kernel() {
        assert_eq!(count_homogeneous_solutions(&IntMatrix::identity(4), 5), 1);
    }

    #[test]
    fn count_two_torsion() {
        let m = IntMatrix::from_rows(vec![vec![2]]);
        assert_eq!(count_homogeneous_solutions(&m, 4), 2);
    }

    #[test]
    fn count_unconstrained() {
        assert_eq!(count_homogeneous_solutions(&IntMatrix::zero(0, 1), 3), 3);
    }

    /// Brute-force count over all n^v vectors for every small matrix in a
    /// fixed exhaustive family; both code paths must agree.
    #[test]
    fn count_matches_brute_force() {
        for n in 2..=5i64 {
            for rows in 0..=2usize {
                for seed in 0..81u32 {
                    let cols = 2;
                    let mut m = IntMatrix::zero(rows, cols);
                    let mut s = seed;
                    for r in 0..rows {
                        for c in 0..cols {
                            m[(r, c)] = (s % 3) as i64 - 1;
                            s /= 3;
                        }
                    }
                    let expect = brute_force_count(&m, n);
                    assert_eq!(
                        count_homogeneous_solutions(&m, n),
                        expect,
                        "n={n} m={m:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn count_matches_prime_rank() {
        for p in [2i64, 3, 5] {
            for seed in 0..256u32 {
                let mut m = IntMatrix::zero(2, 3);
                let mut s = seed;
                for r in 0..2 {
                    for c in 0..3 {
                        m[(r, c)] = (s % 4) as i64;
                        s /= 4;
                    }
                }
                let v = m.cols() as u32;
                let r = rank_mod_prime(&m, p) as u32;
                assert_eq!(
                    count_homogeneous_solutions(&m, p),
                    (p as u64).pow(v - r),
                    "p={p} m={m:?}"
                );
            }
        }
    }

    fn brute_force_count(m: &IntMatrix, n: i64) -> u64 {
        let v = m.cols();
        let mut count = 0;
        let total = (n as u64).pow(v as u32);
        for idx in 0..total {
            let mut x = vec![0i64; v];
            let mut t = idx;
            for e in x.iter_mut() {
                *e = (t % n as u64) as i64;
                t /= n as u64;
            }
            let ok = (0..m.rows()).all(|r| {
                let s: i64 = (0..v).map(|c| m[(r, c)] * x[c]).sum();
                reduce_mod(s, n) == 0
            });
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn permutation_order() {
        let p = Permutation::new(vec![1, 0, 2]).unwrap();
        assert_eq!(p.order(), 2);
        let q = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(Permutation::identity(4).order(), 1);
        assert_eq!(q.compose(&q.inverse()), Permutation::identity(3));
    }

    #[test]
    fn permutation_rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0, 1]).is_none());
        assert!(Permutation::new(vec![0, 3]).is_none());
    }

    #[test]
    fn mod_inverse() {
        assert_eq!(inv_mod(2, 5), Some(3));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(inv_mod(4, 5), Some(4));
        for n in 2..=12i64 {
            for v in 0..n {
                if let Some(w) = inv_mod(v, n) {
                    assert_eq!(reduce_mod(v * w, n), 1);
                } else {
                    assert!(!is_unit(v, n));
                }
            }
        }
    }
}
