use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use serde::Serialize;
use serde_json::{json, Value};

use super::{ConjugacyClass, FiniteGroup, GroupError};

/// Largest `|H|` accepted; the Cayley table of `H` is stored densely.
pub const H4_MAX_INNER_ORDER: u64 = 4000;

/// `(x, y, k)` with `x, y` indices into the element list of `H` and `k ∈ ℤ/4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct H4Elem {
    pub x: u32,
    pub y: u32,
    pub k: u8,
}

/// Complete conjugacy invariant. For even `k` the unordered pair of
/// `H`-classes of the coordinates, for odd `k` the `H`-class of `xy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum H4Key {
    Even { k: u8, lo: u32, hi: u32 },
    Odd { k: u8, class: u32 },
}

/// `(H × H) ⋊ ℤ/4` where the generator of `ℤ/4` swaps the two factors.
pub struct H4Group<H: FiniteGroup> {
    inner: H,
    elems: Vec<H::Elem>,
    index: HashMap<H::Elem, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    class: Vec<u32>,
    class_reps: Vec<u32>,
    class_sizes: Vec<u64>,
    identity: u32,
}

impl<H: FiniteGroup> std::fmt::Debug for H4Group<H> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "H4Group({})", self.inner.spec())
    }
}

impl<H: FiniteGroup> H4Group<H> {
    pub fn new(inner: H) -> Result<Self, GroupError> {
        if inner.order() > H4_MAX_INNER_ORDER {
            return Err(GroupError::Parameters(format!(
                "h4 needs |H| <= {H4_MAX_INNER_ORDER}, got {}",
                inner.order()
            )));
        }
        let elems = inner.elements();
        let h = elems.len();
        let index: HashMap<H::Elem, u32> =
            elems.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let mut mul = vec![0u32; h * h];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                mul[i * h + j] = index[&inner.compose(a, b)];
            }
        }
        let inv = elems.iter().map(|a| index[&inner.invert(a)]).collect();
        let keys: BTreeMap<H::ClassKey, u32> = inner
            .classes()
            .into_iter()
            .enumerate()
            .map(|(c, cl)| (cl.key, c as u32))
            .collect();
        let class: Vec<u32> = elems.iter().map(|e| keys[&inner.class_key(e)]).collect();
        let mut class_reps = vec![u32::MAX; keys.len()];
        let mut class_sizes = vec![0u64; keys.len()];
        for (i, &c) in class.iter().enumerate() {
            if class_reps[c as usize] == u32::MAX {
                class_reps[c as usize] = i as u32;
            }
            class_sizes[c as usize] += 1;
        }
        let identity = index[&inner.identity()];
        Ok(H4Group {
            inner,
            elems,
            index,
            mul,
            inv,
            class,
            class_reps,
            class_sizes,
            identity,
        })
    }

    pub fn inner(&self) -> &H {
        &self.inner
    }

    pub fn inner_order(&self) -> u64 {
        self.elems.len() as u64
    }

    /// The element `(x, y, k)` for `x, y ∈ H`.
    pub fn lift(&self, x: &H::Elem, y: &H::Elem, k: u8) -> Option<H4Elem> {
        Some(H4Elem {
            x: *self.index.get(x)?,
            y: *self.index.get(y)?,
            k: k % 4,
        })
    }

    pub fn components(&self, e: &H4Elem) -> (H::Elem, H::Elem, u8) {
        (self.elems[e.x as usize].clone(), self.elems[e.y as usize].clone(), e.k)
    }

    /// Membership in the index-two subgroup `H × H × 2ℤ/4`.
    pub fn in_h2(&self, e: &H4Elem) -> bool {
        e.k % 2 == 0
    }

    /// `(1, 1, 1)`, which conjugates by swapping coordinates.
    pub fn swap_element(&self) -> H4Elem {
        H4Elem {
            x: self.identity,
            y: self.identity,
            k: 1,
        }
    }

    fn hmul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elems.len() + b as usize]
    }

    fn dense_index(&self, e: &H4Elem) -> usize {
        ((e.x as usize * self.elems.len() + e.y as usize) << 2) | e.k as usize
    }
}

impl<H: FiniteGroup> FiniteGroup for H4Group<H> {
    type Elem = H4Elem;
    type ClassKey = H4Key;

    fn spec(&self) -> String {
        format!("h4:{}", self.inner.spec())
    }

    fn identity(&self) -> H4Elem {
        H4Elem {
            x: self.identity,
            y: self.identity,
            k: 0,
        }
    }

    fn compose(&self, a: &H4Elem, b: &H4Elem) -> H4Elem {
        let (bx, by) = if a.k % 2 == 0 { (b.x, b.y) } else { (b.y, b.x) };
        H4Elem {
            x: self.hmul(a.x, bx),
            y: self.hmul(a.y, by),
            k: (a.k + b.k) % 4,
        }
    }

    fn invert(&self, a: &H4Elem) -> H4Elem {
        let (ix, iy) = (self.inv[a.x as usize], self.inv[a.y as usize]);
        let (x, y) = if a.k % 2 == 0 { (ix, iy) } else { (iy, ix) };
        H4Elem {
            x,
            y,
            k: (4 - a.k) % 4,
        }
    }

    fn order(&self) -> u64 {
        4 * self.inner_order() * self.inner_order()
    }

    /// `(g, 1, 0)` for each generator `g` of `H`, and `(1, 1, 1)`.
    fn generators(&self) -> Vec<H4Elem> {
        let mut out: Vec<H4Elem> = self
            .inner
            .generators()
            .iter()
            .map(|g| H4Elem {
                x: self.index[g],
                y: self.identity,
                k: 0,
            })
            .collect();
        out.push(self.swap_element());
        out
    }

    fn contains(&self, e: &H4Elem) -> bool {
        (e.x as usize) < self.elems.len() && (e.y as usize) < self.elems.len() && e.k < 4
    }

    fn class_key(&self, e: &H4Elem) -> H4Key {
        if e.k % 2 == 0 {
            let (a, b) = (self.class[e.x as usize], self.class[e.y as usize]);
            H4Key::Even {
                k: e.k,
                lo: a.min(b),
                hi: a.max(b),
            }
        } else {
            H4Key::Odd {
                k: e.k,
                class: self.class[self.hmul(e.x, e.y) as usize],
            }
        }
    }

    fn classes(&self) -> Vec<ConjugacyClass<H4Elem, H4Key>> {
        let h = self.inner_order();
        let nc = self.class_reps.len();
        let mut out = Vec::new();
        for k in 0..4u8 {
            if k % 2 == 0 {
                for i in 0..nc {
                    for j in i..nc {
                        let e = H4Elem {
                            x: self.class_reps[i],
                            y: self.class_reps[j],
                            k,
                        };
                        let (si, sj) = (self.class_sizes[i], self.class_sizes[j]);
                        let size = if i == j { si * si } else { 2 * si * sj };
                        out.push(self.make_class(e, size));
                    }
                }
            } else {
                for (c, &r) in self.class_reps.iter().enumerate() {
                    let e = H4Elem {
                        x: r,
                        y: self.identity,
                        k,
                    };
                    out.push(self.make_class(e, h * self.class_sizes[c]));
                }
            }
        }
        out
    }

    fn for_each_element(&self, f: &mut dyn FnMut(&H4Elem)) {
        let h = self.elems.len() as u32;
        for x in 0..h {
            for y in 0..h {
                for k in 0..4 {
                    f(&H4Elem { x, y, k });
                }
            }
        }
    }

    fn encode(&self, e: &H4Elem) -> Value {
        json!([
            self.inner.encode(&self.elems[e.x as usize]),
            self.inner.encode(&self.elems[e.y as usize]),
            e.k
        ])
    }

    fn decode(&self, v: &Value) -> Result<H4Elem, GroupError> {
        let parts = v
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| GroupError::Decode("expected [x, y, k]".into()))?;
        let x = self.inner.decode(&parts[0])?;
        let y = self.inner.decode(&parts[1])?;
        let k = parts[2]
            .as_u64()
            .ok_or_else(|| GroupError::Decode("k must be an integer".into()))?;
        self.lift(&x, &y, (k % 4) as u8)
            .ok_or_else(|| GroupError::NotMember(self.spec()))
    }

    /// Breadth-first closure over a dense bitset of all `4|H|²` elements.
    fn subgroup_order(&self, gens: &[H4Elem], budget: u64) -> Option<u64> {
        let mut seen = FixedBitSet::with_capacity(self.order() as usize);
        let id = self.identity();
        seen.insert(self.dense_index(&id));
        let mut queue = vec![id];
        let mut count = 1u64;
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for g in gens {
                let y = self.compose(&x, g);
                let i = self.dense_index(&y);
                if !seen.put(i) {
                    count += 1;
                    if count > budget {
                        return None;
                    }
                    queue.push(y);
                }
            }
        }
        Some(count)
    }
}

/// `H₍₂₎ = H × H × 2ℤ/4`, the index-two subgroup of even `k`, viewed inside
/// its parent so elements are shared.
pub struct H2View<'a, H: FiniteGroup> {
    parent: &'a H4Group<H>,
}

impl<H: FiniteGroup> H4Group<H> {
    pub fn h2(&self) -> H2View<'_, H> {
        H2View { parent: self }
    }
}

impl<H: FiniteGroup> FiniteGroup for H2View<'_, H> {
    type Elem = H4Elem;
    /// Ordered pair of `H`-classes and `k`; `H₍₂₎ ≅ H × H × ℤ/2`.
    type ClassKey = (u32, u32, u8);

    fn spec(&self) -> String {
        format!("h2:{}", self.parent.inner.spec())
    }

    fn identity(&self) -> H4Elem {
        self.parent.identity()
    }

    fn compose(&self, a: &H4Elem, b: &H4Elem) -> H4Elem {
        self.parent.compose(a, b)
    }

    fn invert(&self, a: &H4Elem) -> H4Elem {
        self.parent.invert(a)
    }

    fn order(&self) -> u64 {
        self.parent.order() / 2
    }

    fn generators(&self) -> Vec<H4Elem> {
        let p = self.parent;
        let mut out = Vec::new();
        for g in p.inner.generators() {
            let i = p.index[&g];
            out.push(H4Elem { x: i, y: p.identity, k: 0 });
            out.push(H4Elem { x: p.identity, y: i, k: 0 });
        }
        out.push(H4Elem { x: p.identity, y: p.identity, k: 2 });
        out
    }

    fn contains(&self, e: &H4Elem) -> bool {
        self.parent.contains(e) && e.k % 2 == 0
    }

    fn class_key(&self, e: &H4Elem) -> (u32, u32, u8) {
        (self.parent.class[e.x as usize], self.parent.class[e.y as usize], e.k)
    }

    fn classes(&self) -> Vec<ConjugacyClass<H4Elem, (u32, u32, u8)>> {
        let p = self.parent;
        let mut out = Vec::new();
        for k in [0u8, 2] {
            for (i, &ri) in p.class_reps.iter().enumerate() {
                for (j, &rj) in p.class_reps.iter().enumerate() {
                    let e = H4Elem { x: ri, y: rj, k };
                    out.push(ConjugacyClass {
                        representative: e,
                        key: self.class_key(&e),
                        size: p.class_sizes[i] * p.class_sizes[j],
                        element_order: p.element_order(&e),
                    });
                }
            }
        }
        out
    }

    fn for_each_element(&self, f: &mut dyn FnMut(&H4Elem)) {
        let h = self.parent.elems.len() as u32;
        for x in 0..h {
            for y in 0..h {
                for k in [0, 2] {
                    f(&H4Elem { x, y, k });
                }
            }
        }
    }

    fn encode(&self, e: &H4Elem) -> Value {
        self.parent.encode(e)
    }

    fn decode(&self, v: &Value) -> Result<H4Elem, GroupError> {
        let e = self.parent.decode(v)?;
        if e.k % 2 == 1 {
            return Err(GroupError::NotMember(self.spec()));
        }
        Ok(e)
    }

    fn subgroup_order(&self, gens: &[H4Elem], budget: u64) -> Option<u64> {
        self.parent.subgroup_order(gens, budget)
    }
}

impl<H: FiniteGroup> H4Group<H> {
    fn make_class(&self, e: H4Elem, size: u64) -> ConjugacyClass<H4Elem, H4Key> {
        ConjugacyClass {
            representative: e,
            key: self.class_key(&e),
            size,
            element_order: self.element_order(&e),
        }
    }
}
