//! Synchronized product of a state space with itself.
//!
//! A path labelled `w` from `(p, q)` is exactly a pair of runs on `w`, one
//! from `p` and one from `q`. Nodes whose components disagree on output
//! are DIFF nodes, the others EQ nodes.
//!
//! Quantifications over infinite input words reduce to finite graph
//! properties: because the system is complete and finitely branching, a
//! word all of whose prefixes admit a run pair avoiding DIFF nodes yields,
//! by König's lemma, one infinite run pair avoiding them, which in a finite
//! graph means an EQ-only cycle reachable through EQ nodes. Conversely a
//! reachable EQ cycle labels such a word.

use std::collections::HashMap;

use crate::system::{InputId, StateId, SynchronousSystem};

pub type NodeId = usize;

#[derive(Clone, Debug)]
pub struct PairGraph {
    nodes: Vec<(StateId, StateId)>,
    index: HashMap<(StateId, StateId), NodeId>,
    // edges[node][input] -> successor nodes, sorted
    edges: Vec<Vec<Vec<NodeId>>>,
    diff: Vec<bool>,
}

impl PairGraph {
    /// Builds the part reachable from the given origin pairs.
    pub fn from_origins(sys: &SynchronousSystem, origins: &[(StateId, StateId)]) -> Self {
        let mut g = PairGraph {
            nodes: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            diff: Vec::new(),
        };
        for &o in origins {
            g.intern(sys, o);
        }
        let mut next = 0;
        while next < g.nodes.len() {
            let (p, q) = g.nodes[next];
            let mut row = Vec::with_capacity(sys.inputs().len());
            for a in sys.inputs_ids() {
                let mut targets = Vec::new();
                for &p2 in sys.successors(p, a) {
                    for &q2 in sys.successors(q, a) {
                        targets.push(g.intern(sys, (p2, q2)));
                    }
                }
                targets.sort_unstable();
                targets.dedup();
                row.push(targets);
            }
            g.edges.push(row);
            next += 1;
        }
        g
    }

    pub fn new(sys: &SynchronousSystem, p: StateId, q: StateId) -> Self {
        Self::from_origins(sys, &[(p, q)])
    }

    fn intern(&mut self, sys: &SynchronousSystem, pair: (StateId, StateId)) -> NodeId {
        if let Some(&id) = self.index.get(&pair) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(pair);
        self.index.insert(pair, id);
        self.diff.push(sys.out(pair.0) != sys.out(pair.1));
        id
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, n: NodeId) -> (StateId, StateId) {
        self.nodes[n]
    }

    pub fn id(&self, pair: (StateId, StateId)) -> Option<NodeId> {
        self.index.get(&pair).copied()
    }

    pub fn is_diff(&self, n: NodeId) -> bool {
        self.diff[n]
    }

    pub fn successors(&self, n: NodeId, a: InputId) -> &[NodeId] {
        &self.edges[n][a.0]
    }

    pub fn num_inputs(&self) -> usize {
        self.edges.first().map_or(0, Vec::len)
    }

    /// Longest run of EQ nodes starting at `origin`, as a word: following
    /// the word, some run pair stays on EQ nodes for `word.len()` steps
    /// (the last letter then necessarily enters a DIFF node). `Err` holds
    /// an EQ cycle reachable through EQ nodes, as `(stem, loop)` words.
    pub fn longest_eq_path(&self, origin: NodeId) -> Result<Vec<InputId>, (Vec<InputId>, Vec<InputId>)> {
        if self.diff[origin] {
            return Ok(Vec::new());
        }
        let mut search = EqSearch {
            graph: self,
            on_stack: vec![false; self.len()],
            longest: vec![None; self.len()],
            path: Vec::new(),
        };
        search.visit(origin)?;
        let mut word = Vec::new();
        let mut n = origin;
        while let Some((_, Some((a, m)))) = search.longest[n] {
            word.push(a);
            n = m;
        }
        // every successor of the last EQ node is a DIFF node
        if let Some(a) = (0..self.num_inputs())
            .map(InputId)
            .find(|&a| !self.edges[n][a.0].is_empty())
        {
            word.push(a);
        }
        Ok(word)
    }
}

/// Length of the longest EQ path from a node and its first step.
type Longest = Option<(usize, Option<(InputId, NodeId)>)>;

struct EqSearch<'g> {
    graph: &'g PairGraph,
    on_stack: Vec<bool>,
    longest: Vec<Longest>,
    // (node, letter taken out of it) along the current DFS branch
    path: Vec<(NodeId, InputId)>,
}

impl EqSearch<'_> {
    fn visit(&mut self, n: NodeId) -> Result<usize, (Vec<InputId>, Vec<InputId>)> {
        if let Some((len, _)) = self.longest[n] {
            return Ok(len);
        }
        self.on_stack[n] = true;
        let mut best = (1, None);
        for a in (0..self.graph.num_inputs()).map(InputId) {
            for &m in self.graph.successors(n, a) {
                if self.graph.diff[m] {
                    continue;
                }
                self.path.push((n, a));
                if self.on_stack[m] {
                    let pos = self.path.iter().position(|&(x, _)| x == m).expect("on current branch");
                    let letters: Vec<InputId> = self.path.iter().map(|&(_, l)| l).collect();
                    return Err((letters[..pos].to_vec(), letters[pos..].to_vec()));
                }
                let len = self.visit(m)?;
                self.path.pop();
                if len + 1 > best.0 {
                    best = (len + 1, Some((a, m)));
                }
            }
        }
        self.on_stack[n] = false;
        self.longest[n] = Some(best);
        Ok(best.0)
    }
}
