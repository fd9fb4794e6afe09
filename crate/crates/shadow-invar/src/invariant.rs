//! Shadow labelings, the fundamental module presentation of a labeling,
//! homomorphism counting and the multiset/polynomial invariants.
//!
//! At a positive crossing with over-in label `x` and under-in label `y`,
//! the outputs are `B_1(x,y)` on the under-out strand and `B_2(x,y)` on the
//! over-out strand. A negative crossing imposes the same constraint read
//! through its positive sense. Region labels propagate across a semiarc by
//! `right = left . label`.

use std::collections::BTreeMap;

use crate::algebra::{GenKind, GeneratorIndex, ShadowModuleStructure};
use crate::birack::{Birack, Shadow};
use crate::diagram::LinkDiagram;
use crate::zn::{count_homogeneous_solutions, IntMatrix};

/// A complete shadow labeling of a diagram: one birack element per semiarc
/// and one shadow element per region (all 0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowLabeling {
    /// Semiarc id -> birack element.
    pub semiarc_labels: BTreeMap<usize, usize>,
    /// Face id -> shadow element.
    pub region_labels: Vec<usize>,
    /// Writhe vector of the underlying framing representative.
    pub writhe: Vec<usize>,
}

/// All birack labelings of `d` (semiarc labels only), in deterministic
/// depth-first order: semiarcs in increasing id, labels ascending, with
/// forced propagation through crossings.
pub fn birack_labelings(d: &LinkDiagram, b: &Birack) -> Vec<BTreeMap<usize, usize>> {
    let edges = d.semiarcs();
    let mut out = Vec::new();
    let mut lab: BTreeMap<usize, usize> = BTreeMap::new();

    // forward: inputs determine outputs; backward: outputs determine inputs
    fn propagate(
        d: &LinkDiagram,
        b: &Birack,
        lab: &mut BTreeMap<usize, usize>,
        forced: &mut Vec<usize>,
    ) -> bool {
        loop {
            let mut changed = false;
            for ci in 0..d.crossings() {
                let t = d.crossing(ci);
                // determining pair per sign: positive (slot3, slot0) ->
                // (slot2, slot1); negative (slot3, slot2) -> (slot0, slot1)
                let (i1, i2, o1, o2) = if d.sign(ci) == 1 {
                    (t[3], t[0], t[2], t[1])
                } else {
                    (t[3], t[2], t[0], t[1])
                };
                if let (Some(&x), Some(&y)) = (lab.get(&i1), lab.get(&i2)) {
                    let v1 = b.b1(x, y);
                    let v2 = b.b2(x, y);
                    for (e, v) in [(o1, v1), (o2, v2)] {
                        match lab.get(&e) {
                            Some(&w) if w != v => return false,
                            Some(_) => {}
                            None => {
                                lab.insert(e, v);
                                forced.push(e);
                                changed = true;
                            }
                        }
                    }
                } else if let (Some(&u), Some(&v)) = (lab.get(&o1), lab.get(&o2)) {
                    let (x, y) = b.b_inverse(u, v);
                    for (e, w) in [(i1, x), (i2, y)] {
                        match lab.get(&e) {
                            Some(&p) if p != w => return false,
                            Some(_) => {}
                            None => {
                                lab.insert(e, w);
                                forced.push(e);
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn dfs(
        d: &LinkDiagram,
        b: &Birack,
        edges: &[usize],
        i: usize,
        lab: &mut BTreeMap<usize, usize>,
        out: &mut Vec<BTreeMap<usize, usize>>,
    ) {
        let mut i = i;
        while i < edges.len() && lab.contains_key(&edges[i]) {
            i += 1;
        }
        if i == edges.len() {
            out.push(lab.clone());
            return;
        }
        let e = edges[i];
        for v in 0..b.size() {
            lab.insert(e, v);
            let mut forced = Vec::new();
            if propagate(d, b, lab, &mut forced) {
                dfs(d, b, edges, i + 1, lab, out);
            }
            for f in forced {
                lab.remove(&f);
            }
            lab.remove(&e);
        }
    }

    dfs(d, b, edges, 0, &mut lab, &mut out);
    out
}

/// Extends one birack labeling to its region labelings: one per seed of the
/// base region (face 0), propagated across semiarcs. Propagation must close
/// up for verified structures; a conflict is an internal invariant
/// violation, not a recoverable error.
fn region_labelings(
    d: &LinkDiagram,
    sh: &Shadow,
    lab: &BTreeMap<usize, usize>,
) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(sh.size());
    for seed in 0..sh.size() {
        let mut reg = vec![usize::MAX; d.face_count()];
        reg[0] = seed;
        let mut stack = vec![0usize];
        while let Some(f) = stack.pop() {
            for &e in d.semiarcs() {
                let (le, ri) = (d.left_face(e), d.right_face(e));
                if le != f && ri != f {
                    continue;
                }
                let x = lab[&e];
                if reg[le] != usize::MAX {
                    let v = sh.act(reg[le], x);
                    if reg[ri] == usize::MAX {
                        reg[ri] = v;
                        stack.push(ri);
                    } else {
                        assert_eq!(
                            reg[ri], v,
                            "region propagation inconsistent across semiarc {e}"
                        );
                    }
                } else if reg[ri] != usize::MAX {
                    let v = sh.act_inverse(reg[ri], x);
                    reg[le] = v;
                    stack.push(le);
                }
            }
        }
        assert!(
            reg.iter().all(|&v| v != usize::MAX),
            "region propagation did not reach every face"
        );
        out.push(reg);
    }
    out
}

/// All shadow labelings of a fixed diagram (no framing sum), in
/// deterministic order: birack labelings first, then the base-region seed.
pub fn enumerate_shadow_labelings(
    d: &LinkDiagram,
    b: &Birack,
    sh: &Shadow,
) -> Vec<ShadowLabeling> {
    let writhe: Vec<usize> = d
        .self_writhe()
        .iter()
        .map(|&w| w.rem_euclid(b.rank() as i64) as usize)
        .collect();
    let mut out = Vec::new();
    for lab in birack_labelings(d, b) {
        for reg in region_labelings(d, sh, &lab) {
            out.push(ShadowLabeling {
                semiarc_labels: lab.clone(),
                region_labels: reg,
                writhe: writhe.clone(),
            });
        }
    }
    out
}

/// The integral birack counting invariant: the number of birack labelings
/// summed over a complete period of framings mod N.
pub fn birack_counting_invariant(d: &LinkDiagram, b: &Birack) -> u64 {
    d.writhe_targets(b.rank())
        .iter()
        .map(|(_, dd)| birack_labelings(dd, b).len() as u64)
        .sum()
}

/// One entry of a presentation matrix row: an integer constant or a signed
/// generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresentationEntry {
    Const(i64),
    Gen(GeneratorIndex, i64),
}

/// Presentation of the fundamental module of a labeling: one bead variable
/// per semiarc, two rows per crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationMatrix {
    pub cols: usize,
    /// Sparse rows: (column, entry), at most three entries per row.
    pub rows: Vec<Vec<(usize, PresentationEntry)>>,
}

/// Builds the presentation matrix of a labeling: per crossing, with beads
/// `(a, b, c, d)` on the role semiarcs and generator triple `(A, x, y)`,
/// the rows `c - t b - s a = 0` and `d - r a = 0`.
pub fn presentation_matrix(d: &LinkDiagram, f: &ShadowLabeling) -> PresentationMatrix {
    let col = |e: usize| d.edge_index(e);
    let mut rows = Vec::with_capacity(2 * d.crossings());
    for ci in 0..d.crossings() {
        let roles = d.crossing_roles(ci);
        let region = f.region_labels[d.corner_face(roles.quadrant.0, roles.quadrant.1)];
        let x = f.semiarc_labels[&roles.x_edge];
        let y = f.semiarc_labels[&roles.y_edge];
        let g = |kind| GeneratorIndex { kind, region, x, y };
        rows.push(vec![
            (col(roles.bead_c), PresentationEntry::Const(1)),
            (col(roles.bead_b), PresentationEntry::Gen(g(GenKind::T), -1)),
            (col(roles.bead_a), PresentationEntry::Gen(g(GenKind::S), -1)),
        ]);
        rows.push(vec![
            (col(roles.bead_d), PresentationEntry::Const(1)),
            (col(roles.bead_a), PresentationEntry::Gen(g(GenKind::R), -1)),
        ]);
    }
    PresentationMatrix {
        cols: d.semiarcs().len(),
        rows,
    }
}

impl PresentationMatrix {
    /// Specializes the formal entries through a module structure, reducing
    /// into `[0, k)`.
    pub fn specialize(&self, ms: &ShadowModuleStructure) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows.len(), self.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, entry) in row {
                let v = match entry {
                    PresentationEntry::Const(v) => v,
                    PresentationEntry::Gen(g, sign) => sign * ms.value(g),
                };
                m[(r, c)] = crate::zn::reduce_mod(m[(r, c)] + v, ms.modulus());
            }
        }
        m
    }
}

/// Number of module homomorphisms from the fundamental module of the
/// labeling into the coefficient module: the solution count of the
/// specialized homogeneous system.
pub fn count_module_homs(pm: &PresentationMatrix, ms: &ShadowModuleStructure) -> u64 {
    count_homogeneous_solutions(&pm.specialize(ms), ms.modulus())
}

/// The invariant value: hom-count multiset and the matching polynomial in
/// `u` with ascending exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantValue {
    /// Ascending hom counts, one per shadow labeling over all framings.
    pub multiset: Vec<u64>,
    /// Exponent -> coefficient.
    pub polynomial: BTreeMap<u64, u64>,
}

impl InvariantValue {
    pub fn from_counts(mut counts: Vec<u64>) -> Self {
        counts.sort_unstable();
        let mut polynomial = BTreeMap::new();
        for &c in &counts {
            *polynomial.entry(c).or_insert(0) += 1;
        }
        InvariantValue {
            multiset: counts,
            polynomial,
        }
    }

    /// Sum of the polynomial coefficients: the total number of shadow
    /// labelings over all writhe vectors.
    pub fn total_labelings(&self) -> u64 {
        self.polynomial.values().sum()
    }
}

impl std::fmt::Display for InvariantValue {
    /// Canonical text form: `6u^9`, multi-term `4u^3 + 4u^27` with
    /// ascending exponents, exponent 0 printed as a bare count and
    /// exponent 1 as `u`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.polynomial.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&exp, &coeff) in &self.polynomial {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match exp {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}u")?,
                _ => write!(f, "{coeff}u^{exp}")?,
            }
        }
        Ok(())
    }
}

/// The shadow module polynomial invariant: hom counts of every shadow
/// labeling of every framing representative over a full period mod N.
pub fn shadow_module_invariant(
    d: &LinkDiagram,
    b: &Birack,
    sh: &Shadow,
    ms: &ShadowModuleStructure,
) -> InvariantValue {
    let mut counts = Vec::new();
    for (_, dd) in d.writhe_targets(b.rank()) {
        for f in enumerate_shadow_labelings(&dd, b, sh) {
            let pm = presentation_matrix(&dd, &f);
            counts.push(count_module_homs(&pm, ms));
        }
    }
    InvariantValue::from_counts(counts)
}
