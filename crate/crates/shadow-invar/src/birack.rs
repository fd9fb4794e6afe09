//! Finite biracks and birack shadows as operation tables: construction with
//! exhaustive axiom verification, the derived sideways/kink maps, rank, and
//! the standard constructors.
//!
//! A birack on `X = {x_1, .., x_n}` is an invertible map `B : X x X -> X x X`
//! that is sideways invertible, diagonally invertible and satisfies the
//! set-theoretic Yang-Baxter equation. Tables follow the paper's block
//! matrix `M_X = [U|L]`: `U[i][j] = B_1(x_j, x_i)` (note the reversed order)
//! and `L[i][j] = B_2(x_i, x_j)`. All file I/O is 1-based; indices are
//! 0-based internally.

use crate::zn::{is_unit, reduce_mod, Permutation};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("table is not {expected}")]
    Shape { expected: String },
    #[error("axiom {axiom} fails at {witness}")]
    AxiomViolation { axiom: Axiom, witness: String },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// Which axiom a verification witness violates. Witnesses are reported
/// 1-based, first failure in lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// B is a bijection on X x X.
    Invertible,
    /// The sideways map exists, is unique and bijective.
    Sideways,
    /// The components of S o Delta and S^-1 o Delta are bijections.
    Diagonal,
    /// The set-theoretic Yang-Baxter equation.
    YangBaxter,
    /// Shadow axiom (i): (A.y_x).x^y = (A.x).y.
    ShadowCrossing,
    /// Shadow axiom (ii): A.x = A.pi(x).
    ShadowKink,
    /// The shadow action is an invertible right action.
    ActionInvertible,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Axiom::Invertible => "invertible",
            Axiom::Sideways => "sideways",
            Axiom::Diagonal => "diagonal",
            Axiom::YangBaxter => "yang-baxter",
            Axiom::ShadowCrossing => "shadow-crossing",
            Axiom::ShadowKink => "shadow-kink",
            Axiom::ActionInvertible => "action-invertible",
        };
        f.write_str(s)
    }
}

fn violation(axiom: Axiom, witness: String) -> StructureError {
    StructureError::AxiomViolation { axiom, witness }
}

/// A verified finite birack with its derived data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Birack {
    n: usize,
    up: Vec<Vec<usize>>,
    low: Vec<Vec<usize>>,
    sideways: Vec<(usize, usize)>,
    alpha: Permutation,
    pi: Permutation,
    rank: usize,
}

impl Birack {
    /// Verifies the tables against the birack axioms and derives the
    /// sideways map, the kink maps and the rank. Tables are 1-based.
    pub fn from_tables(
        up: &[Vec<usize>],
        low: &[Vec<usize>],
    ) -> Result<Birack, StructureError> {
        let n = up.len();
        if n == 0 || low.len() != n {
            return Err(StructureError::Shape {
                expected: "a pair of nonempty square tables of equal size".into(),
            });
        }
        let check = |t: &[Vec<usize>]| {
            t.iter().all(|r| r.len() == n && r.iter().all(|&v| (1..=n).contains(&v)))
        };
        if !check(up) || !check(low) {
            return Err(StructureError::Shape {
                expected: format!("{n}x{n} with entries in 1..={n}"),
            });
        }
        let up: Vec<Vec<usize>> =
            up.iter().map(|r| r.iter().map(|&v| v - 1).collect()).collect();
        let low: Vec<Vec<usize>> =
            low.iter().map(|r| r.iter().map(|&v| v - 1).collect()).collect();
        Self::build(up, low)
    }

    fn build(up: Vec<Vec<usize>>, low: Vec<Vec<usize>>) -> Result<Birack, StructureError> {
        let n = up.len();
        let b1 = |x: usize, y: usize| up[y][x];
        let b2 = |x: usize, y: usize| low[x][y];

        // invertibility of B
        let mut seen = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                let k = b1(x, y) * n + b2(x, y);
                if seen[k] {
                    return Err(violation(
                        Axiom::Invertible,
                        format!("B({},{}) duplicates an output pair", x + 1, y + 1),
                    ));
                }
                seen[k] = true;
            }
        }

        // sideways map: S(B1(x,y), x) = (B2(x,y), y)
        let mut sideways = vec![None; n * n];
        for x in 0..n {
            for y in 0..n {
                let key = b1(x, y) * n + x;
                let val = (b2(x, y), y);
                match sideways[key] {
                    None => sideways[key] = Some(val),
                    Some(v) if v == val => {}
                    Some(_) => {
                        return Err(violation(
                            Axiom::Sideways,
                            format!("not well-defined at (x,y)=({},{})", x + 1, y + 1),
                        ))
                    }
                }
            }
        }
        let sideways: Vec<(usize, usize)> = sideways
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .expect("n^2 keys are covered when no collision occurs");
        let mut seen = vec![false; n * n];
        for &(a, b) in &sideways {
            let k = a * n + b;
            if seen[k] {
                return Err(violation(Axiom::Sideways, "sideways map not bijective".into()));
            }
            seen[k] = true;
        }

        // diagonal invertibility: components of S o Delta and S^-1 o Delta
        let sd1: Vec<usize> = (0..n).map(|x| sideways[x * n + x].0).collect();
        let sd2: Vec<usize> = (0..n).map(|x| sideways[x * n + x].1).collect();
        let mut sinv = vec![(0, 0); n * n];
        for (k, &(a, b)) in sideways.iter().enumerate() {
            sinv[a * n + b] = (k / n, k % n);
        }
        let isd1: Vec<usize> = (0..n).map(|x| sinv[x * n + x].0).collect();
        let isd2: Vec<usize> = (0..n).map(|x| sinv[x * n + x].1).collect();
        for (name, imgs) in [
            ("(S∘Δ)_1", &sd1),
            ("(S∘Δ)_2", &sd2),
            ("(S⁻¹∘Δ)_1", &isd1),
            ("(S⁻¹∘Δ)_2", &isd2),
        ] {
            if Permutation::new(imgs.clone()).is_none() {
                return Err(violation(
                    Axiom::Diagonal,
                    format!("{name} is not a bijection"),
                ));
            }
        }

        // Yang-Baxter on all triples, first lexicographic witness
        let bmap = |x: usize, y: usize| (b1(x, y), b2(x, y));
        let bxi = |t: (usize, usize, usize)| {
            let (a, b) = bmap(t.0, t.1);
            (a, b, t.2)
        };
        let ixb = |t: (usize, usize, usize)| {
            let (a, b) = bmap(t.1, t.2);
            (t.0, a, b)
        };
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let t = (x, y, z);
                    if bxi(ixb(bxi(t))) != ixb(bxi(ixb(t))) {
                        return Err(violation(
                            Axiom::YangBaxter,
                            format!("({},{},{})", x + 1, y + 1, z + 1),
                        ));
                    }
                }
            }
        }

        // kink maps: alpha = ((S^-1 o Delta)_2)^-1, pi = (S^-1 o Delta)_1 o alpha
        let alpha = Permutation::new(isd2).expect("checked above").inverse();
        let pi_images: Vec<usize> = (0..n).map(|x| isd1[alpha.apply(x)]).collect();
        let pi = Permutation::new(pi_images).expect("composition of bijections");
        let rank = pi.order();

        Ok(Birack {
            n,
            up,
            low,
            sideways,
            alpha,
            pi,
            rank,
        })
    }

    /// The (t,s,r)-birack `B(x,y) = (ty + sx, rx)` on Z_n. Requires `t`, `r`
    /// units mod n and `s^2 = (1 - tr)s`.
    pub fn tsr(n: usize, t: i64, s: i64, r: i64) -> Result<Birack, StructureError> {
        let m = n as i64;
        if m < 1 {
            return Err(StructureError::PreconditionFailed("n must be positive".into()));
        }
        if !is_unit(t, m) || !is_unit(r, m) {
            return Err(StructureError::PreconditionFailed(format!(
                "t={t} and r={r} must be units mod {n}"
            )));
        }
        if reduce_mod(s * s, m) != reduce_mod((1 - t * r) * s, m) {
            return Err(StructureError::PreconditionFailed(format!(
                "s^2 = (1-tr)s fails for (t,s,r)=({t},{s},{r}) mod {n}"
            )));
        }
        // elements x_1..x_n stand for residues 0..n-1
        let mut up = vec![vec![0usize; n]; n];
        let mut low = vec![vec![0usize; n]; n];
        for x in 0..n {
            for y in 0..n {
                let b1 = reduce_mod(t * y as i64 + s * x as i64, m) as usize;
                let b2 = reduce_mod(r * x as i64, m) as usize;
                up[y][x] = b1 + 1;
                low[x][y] = b2 + 1;
            }
        }
        Birack::from_tables(&up, &low)
    }

    /// Promotes a rack/quandle table (`table[a][b] = a ▷ b`, 1-based) to the
    /// birack `B(x,y) = (y ▷ x, x)`; verification happens on the promoted
    /// tables.
    pub fn quandle_promotion(table: &[Vec<usize>]) -> Result<Birack, StructureError> {
        let n = table.len();
        let mut low = vec![vec![0usize; n]; n];
        for (i, row) in low.iter_mut().enumerate() {
            for v in row.iter_mut() {
                *v = i + 1;
            }
        }
        Birack::from_tables(table, &low)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// First output of the crossing map: `B_1(x, y) = y^x`.
    pub fn b1(&self, x: usize, y: usize) -> usize {
        self.up[y][x]
    }

    /// Second output of the crossing map: `B_2(x, y) = x_y`.
    pub fn b2(&self, x: usize, y: usize) -> usize {
        self.low[x][y]
    }

    /// Preimage of `(a, b)` under B.
    pub fn b_inverse(&self, a: usize, b: usize) -> (usize, usize) {
        // S(a, b') with ... the sideways map is bijective; invert B directly
        // by the cached sideways structure: S(B1, x) = (B2, y).
        // For desk-scale n a scan is simplest and exact.
        for x in 0..self.n {
            for y in 0..self.n {
                if self.b1(x, y) == a && self.b2(x, y) == b {
                    return (x, y);
                }
            }
        }
        unreachable!("B is bijective")
    }

    pub fn sideways(&self, a: usize, b: usize) -> (usize, usize) {
        self.sideways[a * self.n + b]
    }

    /// Kink maps and rank: `(alpha, pi, N)` with `N = order(pi)`.
    pub fn kink_maps(&self) -> (&Permutation, &Permutation, usize) {
        (&self.alpha, &self.pi, self.rank)
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn pi(&self) -> &Permutation {
        &self.pi
    }

    /// The birack rank N: order of pi.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// 1-based `U` table as in the paper's `M_X = [U|L]`.
    pub fn up_table(&self) -> Vec<Vec<usize>> {
        self.up
            .iter()
            .map(|r| r.iter().map(|&v| v + 1).collect())
            .collect()
    }

    /// 1-based `L` table.
    pub fn low_table(&self) -> Vec<Vec<usize>> {
        self.low
            .iter()
            .map(|r| r.iter().map(|&v| v + 1).collect())
            .collect()
    }
}

/// True when `f` (0-based images) is a birack homomorphism `b -> b2`.
pub fn is_birack_homomorphism(f: &[usize], b: &Birack, b2: &Birack) -> bool {
    if f.len() != b.size() || f.iter().any(|&v| v >= b2.size()) {
        return false;
    }
    (0..b.size()).all(|x| {
        (0..b.size()).all(|y| {
            b2.b1(f[x], f[y]) == f[b.b1(x, y)] && b2.b2(f[x], f[y]) == f[b.b2(x, y)]
        })
    })
}

/// True when the 0-based subset `ys` is closed under B and under the
/// sideways map, so that the restriction is itself a birack.
pub fn is_subbirack(b: &Birack, ys: &[usize]) -> bool {
    let member = {
        let mut m = vec![false; b.size()];
        for &y in ys {
            if y >= b.size() {
                return false;
            }
            m[y] = true;
        }
        m
    };
    ys.iter().all(|&x| {
        ys.iter().all(|&y| {
            let (u, v) = (b.b1(x, y), b.b2(x, y));
            let (p, q) = b.sideways(x, y);
            member[u] && member[v] && member[p] && member[q]
        })
    })
}

/// A verified birack shadow: an invertible right action of X on S
/// satisfying the two shadow axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shadow {
    m: usize,
    n: usize,
    action: Vec<Vec<usize>>,
    inverse: Vec<Vec<usize>>,
}

impl Shadow {
    /// Verifies an m x n action table (1-based entries) over `b`.
    pub fn from_table(b: &Birack, action: &[Vec<usize>]) -> Result<Shadow, StructureError> {
        let m = action.len();
        let n = b.size();
        if m == 0 {
            return Err(StructureError::Shape {
                expected: "a nonempty action table".into(),
            });
        }
        if action
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&v| !(1..=m).contains(&v)))
        {
            return Err(StructureError::Shape {
                expected: format!("{m}x{n} with entries in 1..={m}"),
            });
        }
        let action: Vec<Vec<usize>> = action
            .iter()
            .map(|r| r.iter().map(|&v| v - 1).collect())
            .collect();

        // each column must be a bijection of S
        let mut inverse = vec![vec![usize::MAX; n]; m];
        for x in 0..n {
            let mut seen = vec![false; m];
            for a in 0..m {
                let img = action[a][x];
                if seen[img] {
                    return Err(violation(
                        Axiom::ActionInvertible,
                        format!("column {} is not a bijection", x + 1),
                    ));
                }
                seen[img] = true;
                inverse[img][x] = a;
            }
        }

        let sh = Shadow {
            m,
            n,
            action,
            inverse,
        };
        // axiom (i): (A . y_x) . x^y = (A . x) . y, with y_x = B2(y,x),
        // x^y = B1(y,x); axiom (ii): A . x = A . pi(x)
        for a in 0..m {
            for x in 0..n {
                for y in 0..n {
                    let lhs = sh.act(sh.act(a, b.b2(y, x)), b.b1(y, x));
                    let rhs = sh.act(sh.act(a, x), y);
                    if lhs != rhs {
                        return Err(violation(
                            Axiom::ShadowCrossing,
                            format!("(A,x,y)=({},{},{})", a + 1, x + 1, y + 1),
                        ));
                    }
                }
                if sh.act(a, x) != sh.act(a, b.pi().apply(x)) {
                    return Err(violation(
                        Axiom::ShadowKink,
                        format!("(A,x)=({},{})", a + 1, x + 1),
                    ));
                }
            }
        }
        Ok(sh)
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn strand_size(&self) -> usize {
        self.n
    }

    /// `A . x` (0-based).
    pub fn act(&self, a: usize, x: usize) -> usize {
        self.action[a][x]
    }

    /// The unique `A'` with `A' . x = A`.
    pub fn act_inverse(&self, a: usize, x: usize) -> usize {
        self.inverse[a][x]
    }

    /// 1-based action table as in the paper's `M_{X,S}`.
    pub fn action_table(&self) -> Vec<Vec<usize>> {
        self.action
            .iter()
            .map(|r| r.iter().map(|&v| v + 1).collect())
            .collect()
    }
}
