//! Crystal operators on charged multipartitions and the crystal graph up to
//! the degree bound.
//!
//! The operators use the signature rule: order the residue-`q` addable and
//! removable nodes by the configured total order, write `+` for addable and
//! `-` for removable, cancel every `-+` factor, then `tilde f_q` acts on the
//! last surviving `+` and `tilde e_q` on the first surviving `-`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::fock::FockSpaceParams;
use crate::partitions::{addable_removable, Multipartition, Node};

/// Total order on same-residue nodes used by the signature scan.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum NodeOrder {
    /// Increasing `content + charge`, ties by component index.
    #[default]
    ContentThenComponent,
    /// Increasing component index, then increasing content.
    ComponentThenContent,
}

impl NodeOrder {
    pub fn parse(s: &str) -> Option<NodeOrder> {
        match s {
            "content-then-component" => Some(NodeOrder::ContentThenComponent),
            "component-then-content" => Some(NodeOrder::ComponentThenContent),
            _ => None,
        }
    }

    fn key(&self, node: &Node, params: &FockSpaceParams) -> (i64, i64) {
        let charged = node.content() + params.charge.entry(node.comp);
        match self {
            NodeOrder::ContentThenComponent => (charged, node.comp as i64),
            NodeOrder::ComponentThenContent => (node.comp as i64, node.content()),
        }
    }
}

impl std::fmt::Display for NodeOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NodeOrder::ContentThenComponent => write!(f, "content-then-component"),
            NodeOrder::ComponentThenContent => write!(f, "component-then-content"),
        }
    }
}

// The reduced signature: surviving addable and removable nodes after
// cancelling every (removable, addable) adjacency in scan order.
fn reduced_signature(
    q: u32,
    mp: &Multipartition,
    params: &FockSpaceParams,
    order: NodeOrder,
) -> Vec<(Node, bool)> {
    let (addable, removable) = addable_removable(mp, &params.charge, params.m, q);
    let mut word: Vec<(Node, bool)> = addable
        .into_iter()
        .map(|n| (n, true))
        .chain(removable.into_iter().map(|n| (n, false)))
        .collect();
    word.sort_by_key(|(n, is_add)| (order.key(n, params), !*is_add as u8));
    let mut stack: Vec<(Node, bool)> = Vec::new();
    for entry in word {
        if entry.1 {
            if let Some(&(_, false)) = stack.last() {
                stack.pop();
                continue;
            }
        }
        stack.push(entry);
    }
    stack
}

/// `tilde f_q`: adds the good addable `q`-node, if any.
pub fn tilde_f(
    q: u32,
    mp: &Multipartition,
    params: &FockSpaceParams,
    order: NodeOrder,
) -> Option<Multipartition> {
    let stack = reduced_signature(q, mp, params, order);
    let (node, _) = stack.iter().rev().find(|(_, is_add)| *is_add)?;
    let comp = mp.component(node.comp).with_cell_added(node.row, node.col);
    Some(mp.with_component(node.comp, comp))
}

/// `tilde e_q`: removes the good removable `q`-node, if any.
pub fn tilde_e(
    q: u32,
    mp: &Multipartition,
    params: &FockSpaceParams,
    order: NodeOrder,
) -> Option<Multipartition> {
    let stack = reduced_signature(q, mp, params, order);
    let (node, _) = stack.iter().find(|(_, is_add)| !*is_add)?;
    let comp = mp.component(node.comp).with_cell_removed(node.row, node.col);
    Some(mp.with_component(node.comp, comp))
}

/// Number of surviving `-` (the `tilde e_q`-string length upward).
pub fn epsilon(q: u32, mp: &Multipartition, params: &FockSpaceParams, order: NodeOrder) -> usize {
    reduced_signature(q, mp, params, order)
        .iter()
        .filter(|(_, a)| !a)
        .count()
}

/// Number of surviving `+` (the `tilde f_q`-string length downward).
pub fn phi(q: u32, mp: &Multipartition, params: &FockSpaceParams, order: NodeOrder) -> usize {
    reduced_signature(q, mp, params, order)
        .iter()
        .filter(|(_, a)| *a)
        .count()
}

/// A crystal vertex: the multipartition, its depth (distance from the
/// highest-weight vertex of its connected component), and the component id.
#[derive(Clone, Debug)]
pub struct CrystalVertex {
    pub mp: Multipartition,
    pub depth: u32,
    pub component_id: usize,
}

/// The crystal graph on all multipartitions of degree `<= bound`, with the
/// arrows of every residue.
pub struct CrystalGraph {
    pub params: FockSpaceParams,
    pub order: NodeOrder,
    /// vertices by degree; within a degree, in the canonical basis order
    pub layers: Vec<Vec<CrystalVertex>>,
    /// `f_edges[n][v][q] = index of tilde f_q(v) in layer n+1`
    pub f_edges: Vec<Vec<Vec<Option<usize>>>>,
    components: usize,
}

/// Builds the full crystal graph on degrees `<= params.bound`.
///
/// Every vertex with some defined `tilde e_q` inherits the component of its
/// parents, which must all agree; a vertex with no parent opens a new
/// component at its own degree. The agreement is asserted, as it is exactly
/// what makes the rule a crystal.
pub fn build_graph(params: &FockSpaceParams, order: NodeOrder) -> CrystalGraph {
    let mut layers: Vec<Vec<CrystalVertex>> = Vec::new();
    let mut f_edges: Vec<Vec<Vec<Option<usize>>>> = Vec::new();
    let mut components = 0usize;
    let mut prev_index: BTreeMap<Multipartition, usize> = BTreeMap::new();
    for n in 0..=params.bound {
        let mps = Multipartition::all(n, params.ell);
        let index: BTreeMap<Multipartition, usize> = mps
            .iter()
            .enumerate()
            .map(|(i, mp)| (mp.clone(), i))
            .collect();
        let mut layer = Vec::with_capacity(mps.len());
        for mp in &mps {
            let mut parent: Option<(u32, usize)> = None;
            for q in 0..params.m {
                if let Some(up) = tilde_e(q, mp, params, order) {
                    let pidx = prev_index[&up];
                    let prev_layer: &Vec<CrystalVertex> = &layers[n as usize - 1];
                    let cand = (prev_layer[pidx].depth + 1, prev_layer[pidx].component_id);
                    if let Some(existing) = parent {
                        assert_eq!(
                            existing, cand,
                            "crystal parents disagree at {mp}: not a crystal"
                        );
                    } else {
                        parent = Some(cand);
                    }
                }
            }
            let (depth, component_id) = parent.unwrap_or_else(|| {
                components += 1;
                (0, components - 1)
            });
            layer.push(CrystalVertex {
                mp: mp.clone(),
                depth,
                component_id,
            });
        }
        // f-arrows out of the previous layer
        if n > 0 {
            let prev_mps: Vec<&Multipartition> =
                layers[n as usize - 1].iter().map(|v| &v.mp).collect();
            let edges: Vec<Vec<Option<usize>>> = prev_mps
                .iter()
                .map(|mp| {
                    (0..params.m)
                        .map(|q| tilde_f(q, mp, params, order).map(|img| index[&img]))
                        .collect()
                })
                .collect();
            f_edges.push(edges);
        }
        prev_index = index;
        layers.push(layer);
    }
    // top layer has no outgoing arrows recorded
    f_edges.push(vec![vec![None; params.m as usize]; layers.last().map_or(0, |l| l.len())]);
    CrystalGraph {
        params: params.clone(),
        order,
        layers,
        f_edges,
        components,
    }
}

impl CrystalGraph {
    pub fn component_count(&self) -> usize {
        self.components
    }

    /// Vertices at degree `n` whose every `tilde e_q` is undefined.
    pub fn highest_weight_count(&self, n: u32) -> u64 {
        self.layers[n as usize]
            .iter()
            .filter(|v| v.depth == 0)
            .count() as u64
    }

    /// Counts vertices of each depth at degree `n`.
    pub fn depth_census(&self, n: u32) -> BTreeMap<u32, u64> {
        let mut census = BTreeMap::new();
        for v in &self.layers[n as usize] {
            *census.entry(v.depth).or_insert(0) += 1;
        }
        census
    }

    /// DOT export: vertices labeled by canonical multipartition strings,
    /// edges labeled by the residue.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n");
        for (n, layer) in self.layers.iter().enumerate() {
            for v in layer {
                let _ = writeln!(out, "  \"{}\" [degree={n}, depth={}];", v.mp, v.depth);
            }
        }
        for (n, layer) in self.f_edges.iter().enumerate() {
            if n + 1 >= self.layers.len() {
                break;
            }
            for (src, arrows) in layer.iter().enumerate() {
                for (q, target) in arrows.iter().enumerate() {
                    if let Some(t) = target {
                        let _ = writeln!(
                            out,
                            "  \"{}\" -> \"{}\" [label=\"{q}\"];",
                            self.layers[n][src].mp,
                            self.layers[n + 1][*t].mp
                        );
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// JSON adjacency export.
    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .layers
            .iter()
            .enumerate()
            .flat_map(|(n, layer)| {
                layer.iter().map(move |v| {
                    serde_json::json!({
                        "mp": v.mp.to_string(),
                        "degree": n,
                        "depth": v.depth,
                        "component": v.component_id,
                    })
                })
            })
            .collect();
        let mut edges = Vec::new();
        for (n, layer) in self.f_edges.iter().enumerate() {
            if n + 1 >= self.layers.len() {
                break;
            }
            for (src, arrows) in layer.iter().enumerate() {
                for (q, target) in arrows.iter().enumerate() {
                    if let Some(t) = target {
                        edges.push(serde_json::json!({
                            "from": self.layers[n][src].mp.to_string(),
                            "to": self.layers[n + 1][*t].mp.to_string(),
                            "q": q,
                        }));
                    }
                }
            }
        }
        serde_json::json!({ "vertices": vertices, "edges": edges })
    }
}
