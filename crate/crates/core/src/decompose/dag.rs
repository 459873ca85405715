use crate::group::Subgroup;

/// Containment order on a finite list of subgroups, reduced to Hasse edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentDag {
    nodes: Vec<Subgroup>,
    /// `(i, j)`: `nodes[i] ⊋ nodes[j]` with nothing strictly between.
    edges: Vec<(usize, usize)>,
}

impl ContainmentDag {
    /// Duplicates are dropped; node order is otherwise preserved.
    pub fn new(subgroups: &[Subgroup]) -> Self {
        let mut nodes: Vec<Subgroup> = Vec::new();
        for s in subgroups {
            if !nodes.contains(s) {
                nodes.push(s.clone());
            }
        }
        let n = nodes.len();
        let above = |i: usize, j: usize| i != j && nodes[i].contains_subgroup(&nodes[j]);
        let strict: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| above(i, j)).collect()).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if strict[i][j] && !(0..n).any(|k| strict[i][k] && strict[k][j]) {
                    edges.push((i, j));
                }
            }
        }
        ContainmentDag { nodes, edges }
    }

    pub fn nodes(&self) -> &[Subgroup] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Nodes with no incoming edge.
    pub fn top_level(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&j| !self.edges.iter().any(|&(_, b)| b == j)).collect()
    }

    pub fn is_top_level(&self, h: &Subgroup) -> bool {
        self.nodes.iter().position(|x| x == h).is_some_and(|i| self.top_level().contains(&i))
    }

    /// Length of the longest directed path.
    pub fn depth(&self) -> usize {
        let n = self.nodes.len();
        let mut memo = vec![None; n];
        (0..n).map(|i| self.longest_from(i, &mut memo)).max().unwrap_or(0)
    }

    fn longest_from(&self, i: usize, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(d) = memo[i] {
            return d;
        }
        let children: Vec<usize> = self.edges.iter().filter(|e| e.0 == i).map(|e| e.1).collect();
        let d = children.into_iter().map(|j| 1 + self.longest_from(j, memo)).max().unwrap_or(0);
        memo[i] = Some(d);
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Carrier;

    #[test]
    fn hasse_edges_and_depth() {
        let c = Carrier::zn(2);
        let z = Subgroup::full(c);
        let a = Subgroup::span(c, &[&[1, 0]]).unwrap();
        let a2 = Subgroup::span(c, &[&[2, 0]]).unwrap();
        let b = Subgroup::span(c, &[&[0, 1]]).unwrap();
        let dag = ContainmentDag::new(&[a2.clone(), z, a, b, a2]);
        assert_eq!(dag.nodes().len(), 4);
        // Z^2 -> A -> 2A and Z^2 -> B, but no shortcut Z^2 -> 2A
        assert_eq!(dag.edges(), &[(1, 2), (1, 3), (2, 0)]);
        assert_eq!(dag.top_level(), vec![1]);
        assert_eq!(dag.depth(), 2);
    }
}
