//! The unit-circle subgroup `mu_{q+1}`, the projective line `P^1(F_q)`, and
//! permutation/bijection tests of maps on these sets.

use alloc::vec::Vec;

use crate::gf::{Elt, EnumWhich, FieldCtx};
use crate::poly::{MobiusMap, ProjValue, RatFunc};

/// The `(q+1)`-th roots of unity in `F_{q^2}`, materialized as ascending
/// powers of `g^(q-1)` starting at 1. Every member satisfies
/// `x^q = x^(-1)`.
#[derive(Clone, Debug)]
pub struct UnitCircle {
    elements: Vec<Elt>,
    q: u64,
}

impl UnitCircle {
    pub fn elements(&self) -> &[Elt] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Membership via the defining equation `x^(q+1) = 1`.
    pub fn contains(&self, ctx: &FieldCtx, x: Elt) -> bool {
        !x.is_zero() && ctx.powu(x, self.q + 1) == Elt::ONE
    }
}

/// `P^1(F_q) = F_q ∪ {∞}`, with the subfield in its canonical enumeration
/// order followed by infinity.
#[derive(Clone, Debug)]
pub struct ProjLine {
    elements: Vec<ProjValue>,
}

impl ProjLine {
    pub fn elements(&self) -> &[ProjValue] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, ctx: &FieldCtx, v: ProjValue) -> bool {
        match v {
            ProjValue::Infinity => true,
            ProjValue::Finite(x) => ctx.in_subfield(x),
        }
    }
}

/// Builds `mu_{q+1}` with elements `g^((q-1)j)` for `j = 0..q`.
pub fn unit_circle(ctx: &FieldCtx) -> UnitCircle {
    let z = ctx.powu(ctx.generator(), ctx.q() - 1);
    let mut elements = Vec::with_capacity(ctx.q() as usize + 1);
    let mut x = Elt::ONE;
    for _ in 0..=ctx.q() {
        elements.push(x);
        x = ctx.mul(x, z);
    }
    UnitCircle {
        elements,
        q: ctx.q(),
    }
}

/// Builds `P^1(F_q)`.
pub fn proj_line(ctx: &FieldCtx) -> ProjLine {
    let mut elements: Vec<ProjValue> = ctx
        .enumerate(EnumWhich::Subfield)
        .into_iter()
        .map(ProjValue::Finite)
        .collect();
    elements.push(ProjValue::Infinity);
    ProjLine { elements }
}

/// Either evaluation domain, so permutation checks can be written once.
#[derive(Clone, Debug)]
pub enum EvalSet {
    Circle(UnitCircle),
    Line(ProjLine),
}

impl EvalSet {
    pub fn len(&self) -> usize {
        match self {
            EvalSet::Circle(c) => c.len(),
            EvalSet::Line(l) => l.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, ctx: &FieldCtx, v: ProjValue) -> bool {
        match (self, v) {
            (EvalSet::Circle(c), ProjValue::Finite(x)) => c.contains(ctx, x),
            (EvalSet::Circle(_), ProjValue::Infinity) => false,
            (EvalSet::Line(l), v) => l.contains(ctx, v),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ProjValue> + '_ {
        let (circle, line) = match self {
            EvalSet::Circle(c) => (Some(c.elements.iter().copied().map(ProjValue::Finite)), None),
            EvalSet::Line(l) => (None, Some(l.elements.iter().copied())),
        };
        circle.into_iter().flatten().chain(line.into_iter().flatten())
    }
}

/// Presence bitmap keyed by the canonical element encoding, with infinity in
/// a reserved final slot.
struct Bitmap {
    seen: Vec<bool>,
}

impl Bitmap {
    fn new(ctx: &FieldCtx) -> Bitmap {
        Bitmap {
            seen: alloc::vec![false; ctx.size() as usize + 1],
        }
    }

    /// Returns false if the slot was already marked.
    fn mark(&mut self, v: ProjValue) -> bool {
        let i = match v {
            ProjValue::Finite(x) => x.bits() as usize,
            ProjValue::Infinity => self.seen.len() - 1,
        };
        if self.seen[i] {
            false
        } else {
            self.seen[i] = true;
            true
        }
    }
}

/// True iff projective evaluation of `map` on `set` is injective with image
/// equal to the set itself.
pub fn is_perm_on(ctx: &FieldCtx, map: &RatFunc, set: &EvalSet) -> bool {
    let mut bitmap = Bitmap::new(ctx);
    for v in set.iter() {
        let img = map.eval(ctx, v);
        if !set.contains(ctx, img) || !bitmap.mark(img) {
            return false;
        }
    }
    true
}

/// True iff the Möbius map sends `from` injectively onto `to`.
pub fn maps_bijectively(ctx: &FieldCtx, mu: &MobiusMap, from: &EvalSet, to: &EvalSet) -> bool {
    if from.len() != to.len() {
        return false;
    }
    let mut bitmap = Bitmap::new(ctx);
    for v in from.iter() {
        let img = mu.apply(ctx, v);
        if !to.contains(ctx, img) || !bitmap.mark(img) {
            return false;
        }
    }
    true
}
