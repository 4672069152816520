//! Group cohomology computed without the linking-system machinery.
//!
//! Everything here works from permutations: the groups are re-enumerated,
//! and the linear algebra over `F_p` is local to this module.

pub mod bar;
pub mod classical;
pub mod free;
pub mod modp;

use std::collections::HashMap;

/// A permutation group with its full multiplication table;
/// `mul(a, b)` applies `b` first.
#[derive(Clone, Debug)]
pub struct PermGroup {
    elements: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
    table: Vec<u32>,
    inverses: Vec<u32>,
}

impl PermGroup {
    pub fn generate(degree: usize, generators: &[Vec<u32>]) -> PermGroup {
        let id: Vec<u32> = (0..degree as u32).collect();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut next = 0;
        while next < elements.len() {
            for s in generators {
                let y: Vec<u32> = elements[next].iter().map(|&i| s[i as usize]).collect();
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                }
            }
            next += 1;
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let ab: Vec<u32> = elements[b].iter().map(|&i| elements[a][i as usize]).collect();
                table[a * n + b] = index[&ab];
            }
        }
        let inverses = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).unwrap() as u32).collect();
        PermGroup { elements, index, table, inverses }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.elements.len() + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    pub fn index_of(&self, perm: &[u32]) -> Option<u32> {
        self.index.get(perm).copied()
    }

    pub fn element(&self, a: u32) -> &[u32] {
        &self.elements[a as usize]
    }

    /// Elements `g` with `g K g⁻¹ = K`.
    pub fn normalizer(&self, k: &[u32]) -> Vec<u32> {
        let set: std::collections::HashSet<u32> = k.iter().copied().collect();
        (0..self.order() as u32)
            .filter(|&g| k.iter().all(|&x| set.contains(&self.mul(self.mul(g, x), self.inv(g)))))
            .collect()
    }
}
