use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopoError {
    #[error("cycle detected: {}", .0.join(" -> "))]
    CycleDetected(Vec<String>),
    #[error("edge refers to unknown node `{0}`")]
    UnknownNode(String),
    #[error("node `{0}` declared twice")]
    DuplicateNode(String),
}

/// Orders `nodes` so that every edge `(from, to)` has `from` before `to`.
///
/// Among the nodes that are ready at any step, the one declared first wins,
/// so the result is deterministic and an already compatible declaration order
/// is returned unchanged. On a cycle the error lists one cycle, starting and
/// ending at the same node.
pub fn topological_order<N, E>(nodes: &[N], edges: &[(E, E)]) -> Result<Vec<String>, TopoError>
where
    N: AsRef<str>,
    E: AsRef<str>,
{
    let mut index: HashMap<&str, usize> = HashMap::with_capacity(nodes.len());
    for (i, n) in nodes.iter().enumerate() {
        if index.insert(n.as_ref(), i).is_some() {
            return Err(TopoError::DuplicateNode(n.as_ref().to_string()));
        }
    }
    let lookup = |name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| TopoError::UnknownNode(name.to_string()))
    };

    let mut children = vec![Vec::new(); nodes.len()];
    let mut parents = vec![Vec::new(); nodes.len()];
    let mut in_degree = vec![0usize; nodes.len()];
    for (from, to) in edges {
        let (f, t) = (lookup(from.as_ref())?, lookup(to.as_ref())?);
        children[f].push(t);
        parents[t].push(f);
        in_degree[t] += 1;
    }

    let mut ready: BinaryHeap<Reverse<usize>> = (0..nodes.len())
        .filter(|&i| in_degree[i] == 0)
        .map(Reverse)
        .collect();
    let mut order = Vec::with_capacity(nodes.len());
    while let Some(Reverse(i)) = ready.pop() {
        order.push(i);
        for &c in &children[i] {
            in_degree[c] -= 1;
            if in_degree[c] == 0 {
                ready.push(Reverse(c));
            }
        }
    }

    if order.len() < nodes.len() {
        return Err(TopoError::CycleDetected(
            find_cycle(&parents, &in_degree)
                .into_iter()
                .map(|i| nodes[i].as_ref().to_string())
                .collect(),
        ));
    }
    Ok(order.into_iter().map(|i| nodes[i].as_ref().to_string()).collect())
}

/// Every node left with positive in-degree after Kahn's pass has a parent in
/// the same leftover set, so walking parents must revisit a node.
fn find_cycle(parents: &[Vec<usize>], in_degree: &[usize]) -> Vec<usize> {
    let start = in_degree
        .iter()
        .position(|&d| d > 0)
        .expect("a leftover node exists");
    let mut seen_at: HashMap<usize, usize> = HashMap::new();
    let mut walk = Vec::new();
    let mut current = start;
    loop {
        if let Some(&at) = seen_at.get(&current) {
            let mut cycle: Vec<usize> = walk[at..].to_vec();
            // the walk follows parents; report in arrow direction
            cycle.reverse();
            cycle.push(cycle[0]);
            return cycle;
        }
        seen_at.insert(current, walk.len());
        walk.push(current);
        current = *parents[current]
            .iter()
            .find(|&&p| in_degree[p] > 0)
            .expect("leftover node has a leftover parent");
    }
}
