use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use super::ConjugacyClass;

/// Explicit element list with conjugacy classes and element orders, for
/// groups small enough to enumerate.
#[derive(Debug, Clone)]
pub struct ClassTable<E> {
    elements: Vec<E>,
    index: HashMap<E, u32>,
    class_of: Vec<u32>,
    class_reps: Vec<u32>,
    class_sizes: Vec<u64>,
    orders: Vec<u64>,
}

impl<E: Clone + Eq + Hash> ClassTable<E> {
    /// Enumerates `⟨gens⟩` breadth-first and splits it into classes by
    /// closing each element under conjugation by the generators.
    pub fn build(identity: E, gens: &[E], mul: impl Fn(&E, &E) -> E, inv: impl Fn(&E) -> E) -> Self {
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity.clone(), 0u32)]);
        let mut k = 0;
        while k < elements.len() {
            let x = elements[k].clone();
            k += 1;
            for g in gens {
                let y = mul(&x, g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                }
            }
        }
        let inv_gens: Vec<E> = gens.iter().map(&inv).collect();
        let n = elements.len();
        let mut class_of = vec![u32::MAX; n];
        let mut class_reps = Vec::new();
        let mut class_sizes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let c = class_reps.len() as u32;
            class_reps.push(start as u32);
            class_of[start] = c;
            let mut size = 1u64;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let x = &elements[i];
                for (g, gi) in gens.iter().zip(&inv_gens) {
                    let y = mul(&mul(g, x), gi);
                    let j = index[&y] as usize;
                    if class_of[j] == u32::MAX {
                        class_of[j] = c;
                        size += 1;
                        queue.push_back(j);
                    }
                }
            }
            class_sizes.push(size);
        }
        let orders = elements
            .iter()
            .map(|x| {
                let mut y = x.clone();
                let mut k = 1;
                while y != identity {
                    y = mul(&y, x);
                    k += 1;
                }
                k
            })
            .collect();
        ClassTable {
            elements,
            index,
            class_of,
            class_reps,
            class_sizes,
            orders,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn index_of(&self, x: &E) -> Option<u32> {
        self.index.get(x).copied()
    }

    /// Class index of a member; panics on non-members.
    pub fn class_of(&self, x: &E) -> u32 {
        self.class_of[self.index[x] as usize]
    }

    pub fn class_of_index(&self, i: u32) -> u32 {
        self.class_of[i as usize]
    }

    pub fn class_count(&self) -> usize {
        self.class_reps.len()
    }

    pub fn order_of(&self, x: &E) -> u64 {
        self.orders[self.index[x] as usize]
    }

    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass<E, u32>> {
        self.class_reps
            .iter()
            .zip(&self.class_sizes)
            .enumerate()
            .map(|(c, (&r, &size))| ConjugacyClass {
                representative: self.elements[r as usize].clone(),
                key: c as u32,
                size,
                element_order: self.orders[r as usize],
            })
            .collect()
    }
}
