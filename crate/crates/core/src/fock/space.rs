use std::collections::HashMap;

/// Occupation-number basis of the bosonic Fock space over `mode_count`
/// modes, truncated at total occupation `ncap`.
///
/// States are ordered by total occupation, then lexicographically by
/// occupation vector, so the states with total `≤ n` always form a prefix.
#[derive(Clone, Debug)]
pub struct FockSpace {
    mode_count: usize,
    ncap: u32,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

fn push_compositions(total: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if slots == 0 {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    if slots == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        push_compositions(total - first, slots - 1, prefix, out);
        prefix.pop();
    }
}

impl FockSpace {
    pub fn new(mode_count: usize, ncap: u32) -> Self {
        let mut basis = Vec::new();
        for total in 0..=ncap {
            push_compositions(total, mode_count, &mut Vec::new(), &mut basis);
            if mode_count == 0 {
                break;
            }
        }
        let index = basis.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        FockSpace { mode_count, ncap, basis, index }
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn ncap(&self) -> u32 {
        self.ncap
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn state(&self, i: usize) -> &[u32] {
        &self.basis[i]
    }

    pub fn index_of(&self, occupation: &[u32]) -> Option<usize> {
        self.index.get(occupation).copied()
    }

    pub fn occupation(&self, i: usize) -> u32 {
        self.basis[i].iter().sum()
    }

    pub fn vacuum(&self) -> usize {
        0
    }

    /// Number of states with total occupation `≤ max_total`.
    pub fn guard_dim(&self, max_total: u32) -> usize {
        self.basis.partition_point(|s| s.iter().sum::<u32>() <= max_total)
    }
}
