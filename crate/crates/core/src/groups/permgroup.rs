use std::sync::OnceLock;

use serde_json::{json, Value};

use super::{decode_permutation, ClassTable, ConjugacyClass, FiniteGroup, GroupError};
use crate::perm::{closure, Permutation};

/// The permutation group generated by an explicit list, enumerated up front.
#[derive(Debug)]
pub struct PermGroup {
    name: String,
    degree: usize,
    gens: Vec<Permutation>,
    order: u64,
    table: OnceLock<ClassTable<Permutation>>,
}

impl PermGroup {
    pub fn new(name: &str, degree: usize, gens: Vec<Permutation>, cap: usize) -> Result<Self, GroupError> {
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(GroupError::Parameters("generator degree mismatch".into()));
        }
        let order = closure(&gens, degree, cap)
            .map_err(|e| GroupError::Parameters(format!("group larger than {}", e.cap)))?
            .len() as u64;
        Ok(PermGroup {
            name: name.to_string(),
            degree,
            gens,
            order,
            table: OnceLock::new(),
        })
    }

    /// Dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        let rot = Permutation::long_cycle(n);
        let refl = Permutation::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect())
            .map_err(|e| GroupError::Parameters(e.to_string()))?;
        PermGroup::new(&format!("dihedral:{n}"), n, vec![rot, refl], 4 * n + 4)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn table(&self) -> &ClassTable<Permutation> {
        self.table.get_or_init(|| {
            ClassTable::build(
                Permutation::identity(self.degree),
                &self.gens,
                |a, b| a.compose(b),
                |a| a.inverse(),
            )
        })
    }
}

impl FiniteGroup for PermGroup {
    type Elem = Permutation;
    type ClassKey = u32;

    fn spec(&self) -> String {
        self.name.clone()
    }

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn compose(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b)
    }

    fn invert(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }

    fn order(&self) -> u64 {
        self.order
    }

    fn generators(&self) -> Vec<Permutation> {
        self.gens.clone()
    }

    fn contains(&self, x: &Permutation) -> bool {
        x.degree() == self.degree && self.table().index_of(x).is_some()
    }

    fn class_key(&self, x: &Permutation) -> u32 {
        self.table().class_of(x)
    }

    fn classes(&self) -> Vec<ConjugacyClass<Permutation, u32>> {
        self.table().conjugacy_classes()
    }

    fn for_each_element(&self, f: &mut dyn FnMut(&Permutation)) {
        self.table().elements().iter().for_each(f);
    }

    fn encode(&self, x: &Permutation) -> Value {
        json!(x.to_cycles_one_based())
    }

    fn decode(&self, v: &Value) -> Result<Permutation, GroupError> {
        let x = decode_permutation(v, self.degree)?;
        if !self.contains(&x) {
            return Err(GroupError::NotMember(self.spec()));
        }
        Ok(x)
    }

    fn as_permutation(&self, x: &Permutation) -> Option<Permutation> {
        Some(x.clone())
    }

    fn element_order(&self, x: &Permutation) -> u64 {
        x.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_classes() {
        let d5 = PermGroup::dihedral(5).unwrap();
        assert_eq!(d5.order(), 10);
        assert_eq!(d5.classes().len(), 4);
        let d6 = PermGroup::dihedral(6).unwrap();
        assert_eq!(d6.order(), 12);
        assert_eq!(d6.classes().len(), 6);
    }
}
