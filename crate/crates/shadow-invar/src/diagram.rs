//! Oriented blackboard-framed link diagrams from PD codes.
//!
//! A PD tuple `X(a,b,c,d)` lists the four semiarcs at a crossing
//! counterclockwise starting from the inbound understrand, so slot 0 is the
//! under-in semiarc, slot 2 the under-out, and the over strand runs through
//! slots 1 and 3. A crossing is positive when the over strand enters at
//! slot 3 and negative when it enters at slot 1.
//!
//! Faces are traced on the dart set (crossing, slot): the face to the left
//! of a semiarc is the orbit of its tail dart under sigma∘alpha, where
//! sigma rotates one slot counterclockwise and alpha flips edge ends. The
//! corner between slots s and s+1 of a crossing belongs to the face of
//! dart (crossing, s).

use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed PD code: {0}")]
    MalformedPd(String),
    #[error("PD code is not orientable: {0}")]
    NonOrientable(String),
    #[error("PD code is not planar: V={v} E={e} F={f}")]
    NonPlanar { v: usize, e: usize, f: usize },
}

/// A raw PD code: four 1-based semiarc ids per crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdCode(pub Vec<[usize; 4]>);

impl PdCode {
    /// The mirror diagram: reverse the cyclic order of every tuple while
    /// keeping the under-in slot first.
    pub fn mirror(&self) -> PdCode {
        PdCode(self.0.iter().map(|&[a, b, c, d]| [a, d, c, b]).collect())
    }
}

/// A dart is an edge end: (crossing index, slot).
pub type Dart = (usize, usize);

/// A fully derived oriented diagram. The 0-crossing unknot is the special
/// case `pd = []` with one semiarc and two faces.
#[derive(Debug, Clone)]
pub struct LinkDiagram {
    pd: Vec<[usize; 4]>,
    /// Sorted semiarc ids.
    edges: Vec<usize>,
    /// Crossing signs, +1 or -1.
    signs: Vec<i8>,
    /// Per crossing and slot, the face id of the orbit through that dart.
    face_of: Vec<[usize; 4]>,
    faces: usize,
    /// Face left/right of each semiarc, indexed like `edges`.
    left: Vec<usize>,
    right: Vec<usize>,
    /// head[e] = dart where the semiarc arrives at its crossing.
    head: BTreeMap<usize, Dart>,
    /// Components as sorted semiarc lists, ordered by smallest semiarc.
    components: Vec<Vec<usize>>,
    component_of: BTreeMap<usize, usize>,
    /// Per-component sum of signs of self-crossings.
    self_writhe: Vec<i64>,
}

impl LinkDiagram {
    pub fn from_pd(pd: &PdCode) -> Result<LinkDiagram, DiagramError> {
        if pd.0.is_empty() {
            return Ok(Self::zero_crossing_unknot());
        }
        let pd = pd.0.clone();
        let ncross = pd.len();

        let mut occurrences: BTreeMap<usize, Vec<Dart>> = BTreeMap::new();
        for (ci, t) in pd.iter().enumerate() {
            for (s, &e) in t.iter().enumerate() {
                if e == 0 {
                    return Err(DiagramError::MalformedPd("semiarc ids are 1-based".into()));
                }
                occurrences.entry(e).or_default().push((ci, s));
            }
        }
        for (&e, occ) in &occurrences {
            if occ.len() != 2 {
                return Err(DiagramError::MalformedPd(format!(
                    "semiarc {e} appears {} times (expected 2)",
                    occ.len()
                )));
            }
        }
        let edges: Vec<usize> = occurrences.keys().copied().collect();

        // orient: slot 0 is inbound, slot 2 outbound; each semiarc has one
        // inbound and one outbound end; the over strand passes through, so
        // slots 1 and 3 carry opposite flags as well
        const UNSET: u8 = 0;
        const IN: u8 = 1;
        const OUT: u8 = 2;
        let flip = |v: u8| if v == IN { OUT } else { IN };
        let mut io = vec![[UNSET; 4]; ncross];
        for f in io.iter_mut() {
            f[0] = IN;
            f[2] = OUT;
        }
        loop {
            let mut changed = false;
            for occ in occurrences.values() {
                let [(c1, s1), (c2, s2)] = occ[..] else { unreachable!() };
                let (a, b) = (io[c1][s1], io[c2][s2]);
                match (a, b) {
                    (UNSET, UNSET) => {}
                    (x, UNSET) => {
                        io[c2][s2] = flip(x);
                        changed = true;
                    }
                    (UNSET, x) => {
                        io[c1][s1] = flip(x);
                        changed = true;
                    }
                    (x, y) if x == y => {
                        return Err(DiagramError::NonOrientable(format!(
                            "semiarc {} is {} at both ends",
                            pd[c1][s1],
                            if x == IN { "inbound" } else { "outbound" }
                        )));
                    }
                    _ => {}
                }
            }
            for (ci, f) in io.iter_mut().enumerate() {
                let (a, b) = (f[1], f[3]);
                match (a, b) {
                    (UNSET, UNSET) => {}
                    (x, UNSET) => {
                        f[3] = flip(x);
                        changed = true;
                    }
                    (UNSET, x) => {
                        f[1] = flip(x);
                        changed = true;
                    }
                    (x, y) if x == y => {
                        return Err(DiagramError::NonOrientable(format!(
                            "over strand at crossing {} flows inconsistently",
                            ci + 1
                        )));
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        if io.iter().any(|f| f.contains(&UNSET)) {
            return Err(DiagramError::NonOrientable(
                "orientation underdetermined (a component never passes under)".into(),
            ));
        }

        let mut tail = BTreeMap::new();
        let mut head = BTreeMap::new();
        for (&e, occ) in &occurrences {
            let [(c1, s1), (c2, s2)] = occ[..] else { unreachable!() };
            if io[c1][s1] == OUT {
                tail.insert(e, (c1, s1));
                head.insert(e, (c2, s2));
            } else {
                tail.insert(e, (c2, s2));
                head.insert(e, (c1, s1));
            }
        }

        // sign: positive iff the over strand enters at slot 3
        let signs: Vec<i8> = io
            .iter()
            .map(|f| if f[3] == IN { 1 } else { -1 })
            .collect();

        // faces: orbits of sigma∘alpha over all darts
        let other_end = |d: Dart| -> Dart {
            let e = pd[d.0][d.1];
            let occ = &occurrences[&e];
            if occ[0] == d {
                occ[1]
            } else {
                occ[0]
            }
        };
        let mut face_of = vec![[usize::MAX; 4]; ncross];
        let mut faces = 0usize;
        for ci in 0..ncross {
            for s in 0..4 {
                if face_of[ci][s] != usize::MAX {
                    continue;
                }
                let mut d = (ci, s);
                while face_of[d.0][d.1] == usize::MAX {
                    face_of[d.0][d.1] = faces;
                    let (c2, s2) = other_end(d);
                    d = (c2, (s2 + 1) % 4);
                }
                faces += 1;
            }
        }
        let (v, e) = (ncross, 2 * ncross);
        if v + faces != e + 2 {
            return Err(DiagramError::NonPlanar { v, e, f: faces });
        }

        let left: Vec<usize> = edges
            .iter()
            .map(|e| {
                let (c, s) = tail[e];
                face_of[c][s]
            })
            .collect();
        let right: Vec<usize> = edges
            .iter()
            .map(|e| {
                let (c, s) = head[e];
                face_of[c][s]
            })
            .collect();

        // successor along the strand through each crossing
        let mut succ: BTreeMap<usize, usize> = BTreeMap::new();
        for (ci, t) in pd.iter().enumerate() {
            let (u_in, u_out) = if io[ci][0] == IN { (t[0], t[2]) } else { (t[2], t[0]) };
            let (o_in, o_out) = if io[ci][1] == IN { (t[1], t[3]) } else { (t[3], t[1]) };
            succ.insert(u_in, u_out);
            succ.insert(o_in, o_out);
        }
        let mut component_of = BTreeMap::new();
        let mut components = Vec::new();
        for &e0 in &edges {
            if component_of.contains_key(&e0) {
                continue;
            }
            let idx = components.len();
            let mut comp = Vec::new();
            let mut e = e0;
            while component_of.insert(e, idx).is_none() {
                comp.push(e);
                e = succ[&e];
            }
            comp.sort_unstable();
            components.push(comp);
        }

        let mut self_writhe = vec![0i64; components.len()];
        for (ci, t) in pd.iter().enumerate() {
            let cu = component_of[&t[0]];
            let co = component_of[&t[1]];
            if cu == co {
                self_writhe[cu] += signs[ci] as i64;
            }
        }

        Ok(LinkDiagram {
            pd,
            edges,
            signs,
            face_of,
            faces,
            left,
            right,
            head,
            components,
            component_of,
            self_writhe,
        })
    }

    fn zero_crossing_unknot() -> LinkDiagram {
        LinkDiagram {
            pd: Vec::new(),
            edges: vec![1],
            signs: Vec::new(),
            face_of: Vec::new(),
            faces: 2,
            left: vec![0],
            right: vec![1],
            head: BTreeMap::new(),
            components: vec![vec![1]],
            component_of: [(1, 0)].into_iter().collect(),
            self_writhe: vec![0],
        }
    }

    pub fn pd(&self) -> PdCode {
        PdCode(self.pd.clone())
    }

    pub fn crossings(&self) -> usize {
        self.pd.len()
    }

    pub fn crossing(&self, ci: usize) -> [usize; 4] {
        self.pd[ci]
    }

    pub fn sign(&self, ci: usize) -> i8 {
        self.signs[ci]
    }

    pub fn semiarcs(&self) -> &[usize] {
        &self.edges
    }

    pub fn edge_index(&self, e: usize) -> usize {
        self.edges.binary_search(&e).expect("known semiarc")
    }

    pub fn face_count(&self) -> usize {
        self.faces
    }

    /// Face id of the corner between slots `s` and `s+1` at crossing `ci`.
    pub fn corner_face(&self, ci: usize, s: usize) -> usize {
        self.face_of[ci][s]
    }

    /// Face to the left of the directed semiarc `e`.
    pub fn left_face(&self, e: usize) -> usize {
        self.left[self.edge_index(e)]
    }

    /// Face to the right of the directed semiarc `e`.
    pub fn right_face(&self, e: usize) -> usize {
        self.right[self.edge_index(e)]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, e: usize) -> usize {
        self.component_of[&e]
    }

    /// Per-component sums of self-crossing signs.
    pub fn self_writhe(&self) -> &[i64] {
        &self.self_writhe
    }

    /// Total writhe: sum of all crossing signs.
    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// Crossing slot roles for labeling and bead equations, per the crossing
    /// sign. Returns `(x_edge, y_edge, quadrant_corner_slot, a, b, c, d)`
    /// where the bead rows at the crossing read `c = t b + s a`, `d = r a`
    /// with generator indices `(region at corner, label(x_edge),
    /// label(y_edge))`.
    pub fn crossing_roles(&self, ci: usize) -> CrossingRoles {
        let t = self.pd[ci];
        if self.signs[ci] == 1 {
            CrossingRoles {
                x_edge: t[3],
                y_edge: t[0],
                quadrant: (ci, 3),
                bead_a: t[3],
                bead_b: t[0],
                bead_c: t[2],
                bead_d: t[1],
            }
        } else {
            CrossingRoles {
                x_edge: t[3],
                y_edge: t[2],
                quadrant: (ci, 0),
                bead_a: t[3],
                bead_b: t[2],
                bead_c: t[0],
                bead_d: t[1],
            }
        }
    }

    /// Inserts `count` positive kinks on the given component, each at the
    /// canonical spot: the head of the lowest-numbered semiarc (chaining
    /// onto the continuation for repeated kinks).
    pub fn add_positive_kink(&self, component: usize, count: usize) -> LinkDiagram {
        let mut d = self.clone();
        let mut target = d.components[component][0];
        for _ in 0..count {
            let next = d.insert_kink_at(target);
            target = next;
        }
        d
    }

    /// One positive kink on semiarc `target`; returns the continuation
    /// semiarc id in the new diagram. The kink crossing is
    /// `X(loop, loop, cont, target)`.
    fn insert_kink_at(&mut self, target: usize) -> usize {
        let max_edge = *self.edges.last().expect("diagrams have semiarcs");
        let (loop_e, cont) = (max_edge + 1, max_edge + 2);
        let mut pd = self.pd.clone();
        if pd.is_empty() {
            pd.push([loop_e, loop_e, target, target]);
        } else {
            let (hc, hs) = self.head[&target];
            pd[hc][hs] = cont;
            pd.push([loop_e, loop_e, cont, target]);
        }
        *self = LinkDiagram::from_pd(&PdCode(pd)).expect("kink insertion preserves planarity");
        cont
    }

    /// All framing representatives: for every writhe vector `w` in (Z_N)^c
    /// in lexicographic order, the diagram with `(w_i - selfwrithe_i) mod N`
    /// positive kinks added on component `i`.
    pub fn writhe_targets(&self, rank: usize) -> Vec<(Vec<usize>, LinkDiagram)> {
        assert!(rank >= 1);
        let c = self.components.len();
        let total = rank.pow(c as u32);
        let mut out = Vec::with_capacity(total);
        for idx in 0..total {
            let mut w = vec![0usize; c];
            let mut t = idx;
            for i in (0..c).rev() {
                w[i] = t % rank;
                t /= rank;
            }
            let mut d = self.clone();
            for i in 0..c {
                let need = (w[i] as i64 - self.self_writhe[i]).rem_euclid(rank as i64) as usize;
                if need > 0 {
                    d = d.add_positive_kink(i, need);
                }
            }
            out.push((w, d));
        }
        out
    }
}

/// Per-crossing role assignment; see `LinkDiagram::crossing_roles`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingRoles {
    pub x_edge: usize,
    pub y_edge: usize,
    pub quadrant: Dart,
    pub bead_a: usize,
    pub bead_b: usize,
    pub bead_c: usize,
    pub bead_d: usize,
}
