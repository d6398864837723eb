//! Graded roots: trees with a grading function whose associated F₂[U]-module
//! has one generator per vertex and U stepping down edges, together with the
//! reflection involution J₀, the monotone-subroot extraction, and the
//! realization of a symmetric root as an ι-complex.
//!
//! Gradings here are module gradings (edge steps are ±2); the infinite
//! downward stem is stored as its finite interesting part plus the marked
//! bottom vertex, which is understood to continue downward.

use crate::iota_complex::{IotaComplex, IotaError};
use crate::ufu_algebra::{coker_module, GradedModule, Grading, MonomialMatrix, UfuError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("invalid root: {0}")]
    InvalidRoot(String),
    #[error(transparent)]
    Iota(#[from] IotaError),
    #[error(transparent)]
    Ufu(#[from] UfuError),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, RootError> {
    Err(RootError::InvalidRoot(msg.into()))
}

/// A finite model of a graded root: a tree with χ taking module gradings
/// (adjacent vertices differ by 2), everything funnelling down into the
/// marked stem-bottom vertex, which continues downward forever.
#[derive(Clone, Debug)]
pub struct GradedRoot {
    gradings: Vec<Grading>,
    /// Upward neighbors in planar (left-to-right) order.
    children: Vec<Vec<usize>>,
    /// The unique downward neighbor; `None` exactly at the stem bottom.
    parent: Vec<Option<usize>>,
    stem_bottom: usize,
}

impl GradedRoot {
    /// Build from an explicit vertex/edge list. Edge order fixes the planar
    /// order of children.
    pub fn from_edges(
        gradings: Vec<Grading>,
        edges: &[(usize, usize)],
        stem_bottom: usize,
    ) -> Result<Self, RootError> {
        let n = gradings.len();
        if n == 0 {
            return invalid("root must have at least one vertex");
        }
        if stem_bottom >= n {
            return invalid("stem bottom out of range");
        }
        if edges.len() + 1 != n {
            return invalid(format!(
                "a tree on {} vertices needs {} edges, got {}",
                n,
                n - 1,
                edges.len()
            ));
        }
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut parent: Vec<Option<usize>> = vec![None; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return invalid("edge endpoint out of range");
            }
            let d = match gradings[a].integer_diff(&gradings[b]) {
                Some(d) => d,
                None => return invalid("edge endpoints in different Z-cosets"),
            };
            let (up, down) = match d {
                2 => (a, b),
                -2 => (b, a),
                _ => return invalid(format!("edge ({a},{b}) must step by 2, steps {d}")),
            };
            if parent[up].is_some() {
                return invalid(format!("vertex {up} has two downward edges"));
            }
            parent[up] = Some(down);
            children[down].push(up);
        }
        if parent[stem_bottom].is_some() {
            return invalid("stem bottom has a downward edge");
        }
        for (v, p) in parent.iter().enumerate() {
            if p.is_none() && v != stem_bottom {
                return invalid(format!("vertex {v} has no downward edge and is not the stem"));
            }
        }
        // Connectivity: everything reaches the stem bottom.
        for v in 0..n {
            let mut cur = v;
            let mut steps = 0;
            while let Some(p) = parent[cur] {
                cur = p;
                steps += 1;
                if steps > n {
                    return invalid("cycle in parent structure");
                }
            }
            if cur != stem_bottom {
                return invalid("tree is not connected");
            }
        }
        for v in 0..n {
            if v != stem_bottom && gradings[v] <= gradings[stem_bottom] {
                return invalid("stem bottom must be the unique minimum");
            }
        }
        Ok(GradedRoot {
            gradings,
            children,
            parent,
            stem_bottom,
        })
    }

    pub fn len(&self) -> usize {
        self.gradings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gradings.is_empty()
    }

    pub fn gradings(&self) -> &[Grading] {
        &self.gradings
    }

    pub fn stem_bottom(&self) -> usize {
        self.stem_bottom
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Edges as (upper, lower) pairs, grouped by lower vertex with the
    /// upper vertices in planar order, so a rebuild preserves planarity.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.len() {
            for &c in &self.children[v] {
                out.push((c, v));
            }
        }
        out
    }

    /// Leaves (vertices without upward neighbors) in planar order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![self.stem_bottom];
        while let Some(v) = stack.pop() {
            if self.children[v].is_empty() {
                out.push(v);
            } else {
                for &c in self.children[v].iter().rev() {
                    stack.push(c);
                }
            }
        }
        out
    }

    /// Lowest common vertex of the downward paths from a and b.
    pub fn merge_vertex(&self, a: usize, b: usize) -> usize {
        let depth = |mut v: usize| {
            let mut d = 0;
            while let Some(p) = self.parent[v] {
                v = p;
                d += 1;
            }
            d
        };
        let (mut a, mut b) = (a, b);
        let (mut da, mut db) = (depth(a), depth(b));
        while da > db {
            a = self.parent[a].unwrap();
            da -= 1;
        }
        while db > da {
            b = self.parent[b].unwrap();
            db -= 1;
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        a
    }

    /// Number of vertices in each grading, the F₂ dimension of ℍ⁻ there
    /// (above the stem bottom).
    pub fn vertex_count_at(&self, g: Grading) -> usize {
        self.gradings.iter().filter(|&&x| x == g).count()
    }
}

/// A graded root together with its grading-preserving involution J₀.
#[derive(Clone, Debug)]
pub struct SymmetricGradedRoot {
    root: GradedRoot,
    involution: Vec<usize>,
}

impl SymmetricGradedRoot {
    pub fn new(root: GradedRoot, involution: Vec<usize>) -> Result<Self, RootError> {
        let n = root.len();
        if involution.len() != n {
            return invalid("involution must cover every vertex");
        }
        for v in 0..n {
            let w = involution[v];
            if w >= n || involution[w] != v {
                return invalid("involution is not an involution");
            }
            if root.gradings[w] != root.gradings[v] {
                return invalid("involution must preserve gradings");
            }
        }
        // At most one fixed vertex per grading.
        for v in 0..n {
            for w in (v + 1)..n {
                if involution[v] == v && involution[w] == w && root.gradings[v] == root.gradings[w]
                {
                    return invalid("two J0-fixed vertices share a grading");
                }
            }
        }
        // Edge equivariance.
        for (up, down) in root.edges() {
            if root.parent[involution[up]] != Some(involution[down]) {
                return invalid("involution does not respect edges");
            }
        }
        if involution[root.stem_bottom] != root.stem_bottom {
            return invalid("stem bottom must be fixed");
        }
        // J₀ must reverse the planar leaf order.
        let leaves = root.leaves();
        let k = leaves.len();
        for (i, &l) in leaves.iter().enumerate() {
            if involution[l] != leaves[k - 1 - i] {
                return invalid("involution must reverse the planar leaf order");
            }
        }
        Ok(SymmetricGradedRoot { root, involution })
    }

    /// Build the symmetric root determined by planar leaf gradings and the
    /// merge grading of each adjacent pair, with J₀ the reflection. Both
    /// lists must be palindromic.
    pub fn from_leaf_merges(
        leaf_gradings: &[Grading],
        merge_gradings: &[Grading],
    ) -> Result<Self, RootError> {
        let k = leaf_gradings.len();
        if k == 0 {
            return invalid("need at least one leaf");
        }
        if merge_gradings.len() + 1 != k {
            return invalid("need exactly one merge grading per adjacent leaf pair");
        }
        for i in 0..k {
            if leaf_gradings[i] != leaf_gradings[k - 1 - i] {
                return invalid("leaf gradings must be palindromic");
            }
        }
        for i in 0..k - 1 {
            if merge_gradings[i] != merge_gradings[k - 2 - i] {
                return invalid("merge gradings must be palindromic");
            }
        }
        for (i, &m) in merge_gradings.iter().enumerate() {
            let cap = std::cmp::min(leaf_gradings[i], leaf_gradings[i + 1]);
            match cap.integer_diff(&m) {
                Some(d) if d >= 2 && d % 2 == 0 => {}
                _ => {
                    return invalid(format!(
                        "merge {i} at {m} must sit an even number of steps below {cap}"
                    ))
                }
            }
        }

        // Dendrogram construction: one descending chain per leaf, coalesced
        // at merge events in order of (grading desc, index asc).
        let mut gradings: Vec<Grading> = Vec::new();
        let mut children: Vec<Vec<usize>> = Vec::new();
        let new_vertex = |gradings: &mut Vec<Grading>,
                              children: &mut Vec<Vec<usize>>,
                              g: Grading|
         -> usize {
            gradings.push(g);
            children.push(Vec::new());
            gradings.len() - 1
        };

        struct Chain {
            bottom: usize,
        }
        let mut chains: Vec<Chain> = Vec::new();
        let mut chain_of: Vec<usize> = (0..k).collect();
        let mut leaf_vertex: Vec<usize> = Vec::new();
        for &g in leaf_gradings {
            let v = new_vertex(&mut gradings, &mut children, g);
            leaf_vertex.push(v);
            chains.push(Chain { bottom: v });
        }

        let mut events: Vec<(Grading, usize)> =
            merge_gradings.iter().copied().zip(0..).collect();
        events.sort_by(|a, b| (b.0, a.1).cmp(&(a.0, b.1)));

        let extend_to = |gradings: &mut Vec<Grading>,
                         children: &mut Vec<Vec<usize>>,
                         mut bottom: usize,
                         to: Grading|
         -> usize {
            while gradings[bottom] > to {
                let g = gradings[bottom].shift(-2);
                gradings.push(g);
                children.push(vec![bottom]);
                bottom = gradings.len() - 1;
            }
            bottom
        };

        for (m, i) in events {
            let (lc, rc) = (chain_of[i], chain_of[i + 1]);
            debug_assert_ne!(lc, rc, "merge within one chain");
            let right_bottom = extend_to(&mut gradings, &mut children, chains[rc].bottom, m.shift(2));
            let join = if gradings[chains[lc].bottom] == m {
                let join = chains[lc].bottom;
                children[join].push(right_bottom);
                join
            } else {
                let left_bottom =
                    extend_to(&mut gradings, &mut children, chains[lc].bottom, m.shift(2));
                let join = new_vertex(&mut gradings, &mut children, m);
                children[join].push(left_bottom);
                children[join].push(right_bottom);
                join
            };
            chains[lc].bottom = join;
            for c in chain_of.iter_mut() {
                if *c == rc {
                    *c = lc;
                }
            }
        }

        let stem_bottom = chains[chain_of[0]].bottom;
        let n = gradings.len();
        let mut parent = vec![None; n];
        for (v, cs) in children.iter().enumerate() {
            for &c in cs {
                parent[c] = Some(v);
            }
        }
        let root = GradedRoot {
            gradings,
            children,
            parent,
            stem_bottom,
        };

        // J₀ by structural reflection from the stem bottom upward.
        let mut involution = vec![usize::MAX; n];
        let mut stack = vec![(stem_bottom, stem_bottom)];
        while let Some((v, w)) = stack.pop() {
            involution[v] = w;
            let cv = &root.children[v];
            let cw = &root.children[w];
            if cv.len() != cw.len() {
                return invalid("root is not symmetric: branch shapes differ");
            }
            for (i, &c) in cv.iter().enumerate() {
                stack.push((c, cw[cw.len() - 1 - i]));
            }
        }
        SymmetricGradedRoot::new(root, involution)
    }

    pub fn root(&self) -> &GradedRoot {
        &self.root
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn j0(&self, v: usize) -> usize {
        self.involution[v]
    }

    /// Planar leaves and the merge gradings of adjacent pairs — the inverse
    /// of `from_leaf_merges` up to isomorphism.
    pub fn leaf_merge_data(&self) -> (Vec<Grading>, Vec<Grading>) {
        let leaves = self.root.leaves();
        let leaf_gr: Vec<Grading> = leaves.iter().map(|&l| self.root.gradings[l]).collect();
        let merges: Vec<Grading> = leaves
            .windows(2)
            .map(|w| self.root.gradings[self.root.merge_vertex(w[0], w[1])])
            .collect();
        (leaf_gr, merges)
    }

    /// ℍ⁻(M): one generator per leaf modulo the adjacent-merge relations,
    /// with the J₀ action on the leaf generators.
    pub fn hminus(&self) -> Result<(GradedModule, MonomialMatrix), RootError> {
        let (leaf_gr, merges) = self.leaf_merge_data();
        let presentation = leaf_merge_presentation(&leaf_gr, &merges);
        let module = coker_module(&presentation);
        if module.free_rank() != 1 {
            return invalid(format!(
                "hminus has free rank {}, expected 1",
                module.free_rank()
            ));
        }
        let leaves = self.root.leaves();
        let mut j0 = MonomialMatrix::zero(leaf_gr.clone(), leaf_gr.clone(), 0);
        for (i, &l) in leaves.iter().enumerate() {
            let img = self.involution[l];
            let j = leaves.iter().position(|&x| x == img).expect("leaf image");
            j0.set(j, i).expect("J0 is grading-preserving");
        }
        Ok((module, j0))
    }

    /// The monotone subroot, by the cluster/base/tips scan.
    ///
    /// The stem is the downward chain of J₀-fixed vertices; the base of a
    /// vertex is the grading where its downward path first meets the stem;
    /// tips of a nontrivial cluster are a J₀-swapped pair of maximal
    /// grading. Scanning bases downward, tips are kept only when they rise
    /// above everything already kept.
    pub fn monotone_subroot(&self) -> Result<MonotoneRoot, RootError> {
        let n = self.root.len();
        let fixed: Vec<bool> = (0..n).map(|v| self.involution[v] == v).collect();
        if !fixed[self.root.stem_bottom] {
            return invalid("stem bottom must be J0-fixed");
        }
        // Base of v: first fixed vertex on the downward path.
        let base = |mut v: usize| -> usize {
            loop {
                if fixed[v] {
                    return v;
                }
                v = self.root.parent[v].expect("paths end at the fixed stem bottom");
            }
        };
        let mut clusters: std::collections::BTreeMap<std::cmp::Reverse<Grading>, Vec<usize>> =
            Default::default();
        for v in 0..n {
            let b = base(v);
            clusters
                .entry(std::cmp::Reverse(self.root.gradings[b]))
                .or_default()
                .push(v);
        }

        let top_fixed = (0..n)
            .filter(|&v| fixed[v])
            .max_by_key(|&v| self.root.gradings[v])
            .expect("the stem bottom is fixed");
        let r_top = self.root.gradings[top_fixed];

        let mut pairs: Vec<(Grading, Grading)> = Vec::new(); // (h, r), collected bottom-up
        for (std::cmp::Reverse(b), members) in clusters.iter() {
            let b = *b;
            if b > r_top {
                unreachable!("bases are gradings of fixed vertices");
            }
            let moving: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&v| !fixed[v])
                .collect();
            if b == r_top {
                if moving.is_empty() {
                    pairs.push((r_top, r_top));
                } else {
                    let h = moving
                        .iter()
                        .map(|&v| self.root.gradings[v])
                        .max()
                        .unwrap();
                    pairs.push((h, b));
                }
                continue;
            }
            if moving.is_empty() {
                continue; // trivial cluster below the top: skip
            }
            let h = moving
                .iter()
                .map(|&v| self.root.gradings[v])
                .max()
                .unwrap();
            let current_max = pairs.iter().map(|&(h, _)| h).max().unwrap();
            if h > current_max {
                pairs.push((h, b));
            }
        }

        pairs.sort_by(|a, b| b.cmp(a));
        MonotoneRoot::new(pairs)
    }

    /// Realize the root as an ι-complex: one generator per leaf, one
    /// relation generator per adjacent-leaf merge, ι induced by J₀.
    /// Postcondition (checked by callers/tests): homology ≅ ℍ⁻(M) with
    /// ι_* = J₀.
    pub fn realize(&self) -> Result<IotaComplex, RootError> {
        let (leaf_gr, merges) = self.leaf_merge_data();
        let k = leaf_gr.len();
        let mut gens: Vec<(String, Grading)> = Vec::new();
        for (i, &g) in leaf_gr.iter().enumerate() {
            gens.push((format!("l{i}"), g));
        }
        for (i, &m) in merges.iter().enumerate() {
            gens.push((format!("r{i}"), m.shift(1)));
        }
        let gen_refs: Vec<(&str, Grading)> = gens
            .iter()
            .map(|(n, g)| (n.as_str(), *g))
            .collect();
        let mut d_arrows: Vec<(String, String)> = Vec::new();
        for i in 0..merges.len() {
            d_arrows.push((format!("r{i}"), format!("l{i}")));
            d_arrows.push((format!("r{i}"), format!("l{}", i + 1)));
        }
        let mut iota_arrows: Vec<(String, String)> = Vec::new();
        for i in 0..k {
            iota_arrows.push((format!("l{i}"), format!("l{}", k - 1 - i)));
        }
        for i in 0..merges.len() {
            iota_arrows.push((format!("r{i}"), format!("r{}", merges.len() - 1 - i)));
        }
        let d_refs: Vec<(&str, &str)> = d_arrows
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        let i_refs: Vec<(&str, &str)> = iota_arrows
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        let complex = IotaComplex::build(&gen_refs, &d_refs, &i_refs)?;
        Ok(complex)
    }

    /// The same root with every grading shifted by a rational amount.
    pub fn shifted_by(&self, delta: Grading) -> SymmetricGradedRoot {
        let (leaves, merges) = self.leaf_merge_data();
        let leaves: Vec<Grading> = leaves.into_iter().map(|g| g + delta).collect();
        let merges: Vec<Grading> = merges.into_iter().map(|g| g + delta).collect();
        SymmetricGradedRoot::from_leaf_merges(&leaves, &merges)
            .expect("shift preserves root validity")
    }

    /// Connected homology through the monotone subroot: the U-torsion of
    /// ℍ⁻(subroot), shifted up by one.
    pub fn connected_homology(&self) -> Result<GradedModule, RootError> {
        let sub = self.monotone_subroot()?;
        let (module, _) = sub.to_symmetric_root()?.hminus()?;
        Ok(module.torsion().shifted_up(1))
    }
}

fn leaf_merge_presentation(leaf_gr: &[Grading], merges: &[Grading]) -> MonomialMatrix {
    let mut p = MonomialMatrix::zero(
        leaf_gr.to_vec(),
        merges.iter().map(|m| m.shift(1)).collect(),
        -1,
    );
    for (i, _) in merges.iter().enumerate() {
        p.set(i, i).expect("merge below left leaf");
        p.set(i + 1, i).expect("merge below right leaf");
    }
    p
}

/// A monotone graded root M(h₁,r₁;…;h_n,r_n): h strictly decreasing, r
/// strictly increasing, h_n ≥ r_n, all congruent mod 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneRoot {
    pairs: Vec<(Grading, Grading)>,
}

impl MonotoneRoot {
    pub fn new(pairs: Vec<(Grading, Grading)>) -> Result<Self, RootError> {
        if pairs.is_empty() {
            return invalid("monotone root needs at least one (h, r) pair");
        }
        for w in pairs.windows(2) {
            if w[0].0 <= w[1].0 {
                return invalid("h parameters must strictly decrease");
            }
            if w[0].1 >= w[1].1 {
                return invalid("r parameters must strictly increase");
            }
        }
        let (h_n, r_n) = *pairs.last().unwrap();
        if h_n < r_n {
            return invalid("h_n must be at least r_n");
        }
        let anchor = pairs[0].0;
        for &(h, r) in &pairs {
            if !h.even_diff(&anchor) || !r.even_diff(&anchor) {
                return invalid("parameters must all be congruent mod 2");
            }
        }
        Ok(MonotoneRoot { pairs })
    }

    pub fn pairs(&self) -> &[(Grading, Grading)] {
        &self.pairs
    }

    /// Expand to the symmetric graded root it abbreviates.
    pub fn to_symmetric_root(&self) -> Result<SymmetricGradedRoot, RootError> {
        let n = self.pairs.len();
        let (h_n, r_n) = self.pairs[n - 1];
        let mut leaves: Vec<Grading> = Vec::new();
        let mut merges: Vec<Grading> = Vec::new();
        if h_n > r_n {
            // Leaves v₁ … v_n J₀v_n … J₀v₁ with v_i joining the trunk at r_i.
            for &(h, _) in &self.pairs {
                leaves.push(h);
            }
            for &(h, _) in self.pairs.iter().rev() {
                leaves.push(h);
            }
            for &(_, r) in &self.pairs {
                merges.push(r);
            }
            for &(_, r) in self.pairs.iter().rev().skip(1) {
                merges.push(r);
            }
        } else {
            // v_n = J₀v_n sits on the stem.
            for &(h, _) in &self.pairs {
                leaves.push(h);
            }
            for &(h, _) in self.pairs.iter().rev().skip(1) {
                leaves.push(h);
            }
            for &(_, r) in self.pairs.iter().take(n - 1) {
                merges.push(r);
            }
            for &(_, r) in self.pairs.iter().rev().skip(1) {
                merges.push(r);
            }
        }
        SymmetricGradedRoot::from_leaf_merges(&leaves, &merges)
    }

    /// ℍ⁻ of the monotone root.
    pub fn hminus(&self) -> Result<(GradedModule, MonomialMatrix), RootError> {
        self.to_symmetric_root()?.hminus()
    }
}

/// Connected homology of a symmetric graded root via the monotone subroot:
/// torsion of ℍ⁻ of the subroot, shifted up by one. Must agree with
/// `connected_homology(realize(M))`.
pub fn root_connected_homology(m: &SymmetricGradedRoot) -> Result<GradedModule, RootError> {
    m.connected_homology()
}
