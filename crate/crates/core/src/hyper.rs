//! Finite hyperrings, hyperfields and partial hyperrings.

use rayon::prelude::*;

use crate::carrier::{mask_product, ElementIndex, HyperAddTable, SubsetMask, MAX_CARRIER};
use crate::error::{Error, Result};
use crate::fuzzy::{MorphismKind, MorphismTable};
use crate::report::AxiomReport;
use crate::ring::FiniteRing;

/// Largest source carrier for exhaustive homomorphism enumeration.
pub const HOM_ENUM_CAP: usize = 8;

/// A hyperring on `{0, .., n-1}`: `0` is the additive identity and `1`
/// the multiplicative identity (the same element when `n == 1`).
///
/// When `partial` is set, sums may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteHyperring {
    n: usize,
    add: HyperAddTable,
    mul: Vec<ElementIndex>,
    neg: Vec<ElementIndex>,
    partial: bool,
    labels: Vec<String>,
}

impl FiniteHyperring {
    /// Builds a hyperring from row-major tables. Only well-formedness is
    /// enforced here (shape, ranges, nonempty sums unless partial, unique
    /// additive inverses); the axioms are the business of the checkers.
    pub fn from_masks(
        n: usize,
        add: Vec<SubsetMask>,
        mul: Vec<ElementIndex>,
        partial: bool,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if n > MAX_CARRIER {
            return Err(Error::CarrierTooLarge { size: n, cap: MAX_CARRIER });
        }
        if add.len() != n * n {
            return Err(Error::TableShape { table: "add", expected: n * n, found: add.len() });
        }
        if mul.len() != n * n {
            return Err(Error::TableShape { table: "mul", expected: n * n, found: mul.len() });
        }
        let full = SubsetMask::full(n);
        if let Some(m) = add.iter().find(|m| !m.is_subset(full)) {
            let index = m.intersection(SubsetMask(!full.bits())).min().unwrap_or(n);
            return Err(Error::IndexOutOfRange { table: "add", index, size: n });
        }
        if !partial {
            if let Some(k) = add.iter().position(|m| m.is_empty()) {
                return Err(Error::InvalidArgument(format!(
                    "empty sum {} + {} in a non-partial hyperring",
                    k / n,
                    k % n
                )));
            }
        }
        if let Some(&bad) = mul.iter().find(|&&x| x >= n) {
            return Err(Error::IndexOutOfRange { table: "mul", index: bad, size: n });
        }
        let add = HyperAddTable::from_raw(n, add);
        let mut neg = vec![0; n];
        for (a, slot) in neg.iter_mut().enumerate() {
            let inv: Vec<_> = (0..n).filter(|&x| add.get(a, x).contains(0)).collect();
            if inv.len() != 1 {
                return Err(Error::NoUniqueInverse { elem: a, count: inv.len() });
            }
            *slot = inv[0];
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(Self { n, add, mul, neg, partial, labels })
    }

    /// Builds from nested tables: `add[a][b]` lists the members of `a + b`.
    pub fn new(add: &[Vec<Vec<ElementIndex>>], mul: &[Vec<ElementIndex>], partial: bool) -> Result<Self> {
        let n = add.len();
        let mut masks = Vec::with_capacity(n * n);
        for row in add {
            if row.len() != n {
                return Err(Error::TableShape { table: "add", expected: n, found: row.len() });
            }
            for cell in row {
                if let Some(&bad) = cell.iter().find(|&&x| x >= n.min(MAX_CARRIER)) {
                    return Err(Error::IndexOutOfRange { table: "add", index: bad, size: n });
                }
                masks.push(SubsetMask::from_elems(cell.iter().copied()));
            }
        }
        if mul.len() != n {
            return Err(Error::TableShape { table: "mul", expected: n, found: mul.len() });
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in mul {
            if row.len() != n {
                return Err(Error::TableShape { table: "mul", expected: n, found: row.len() });
            }
            flat.extend_from_slice(row);
        }
        Self::from_masks(n, masks, flat, partial)
    }

    /// A ring viewed as a hyperring with singleton sums.
    pub fn from_ring(r: &FiniteRing) -> Self {
        let n = r.size();
        let add = r.add_table().iter().map(|&x| SubsetMask::singleton(x)).collect();
        Self::from_masks(n, add, r.mul_table().to_vec(), false)
            .expect("ring tables are well formed")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn zero(&self) -> ElementIndex {
        0
    }

    #[inline]
    pub fn one(&self) -> ElementIndex {
        if self.n == 1 {
            0
        } else {
            1
        }
    }

    #[inline]
    pub fn is_partial(&self) -> bool {
        self.partial
    }

    #[inline]
    pub fn add(&self, a: ElementIndex, b: ElementIndex) -> SubsetMask {
        self.add.get(a, b)
    }

    #[inline]
    pub fn mul(&self, a: ElementIndex, b: ElementIndex) -> ElementIndex {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn neg(&self, a: ElementIndex) -> ElementIndex {
        self.neg[a]
    }

    pub fn add_table(&self) -> &HyperAddTable {
        &self.add
    }

    pub fn mul_table(&self) -> &[ElementIndex] {
        &self.mul
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: ElementIndex) -> &str {
        &self.labels[i]
    }

    /// `A + B` on subsets.
    #[inline]
    pub fn extend(&self, a: SubsetMask, b: SubsetMask) -> SubsetMask {
        self.add.extend(a, b)
    }

    /// `{ab : a in A, b in B}`.
    #[inline]
    pub fn mul_masks(&self, a: SubsetMask, b: SubsetMask) -> SubsetMask {
        mask_product(self.n, &self.mul, a, b)
    }

    /// Left-folded hypersum of a nonempty list.
    pub fn sum(&self, elems: &[ElementIndex]) -> SubsetMask {
        self.add.sum(elems)
    }

    pub fn units(&self) -> SubsetMask {
        let one = self.one();
        (0..self.n)
            .filter(|&a| (0..self.n).any(|b| self.mul(a, b) == one))
            .collect()
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self, a: ElementIndex) -> Option<ElementIndex> {
        (0..self.n).find(|&b| self.mul(a, b) == self.one())
    }

    /// Nested form of the addition table, as stored in structure files.
    pub fn add_nested(&self) -> Vec<Vec<Vec<ElementIndex>>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.add(a, b).to_vec()).collect())
            .collect()
    }

    pub fn mul_nested(&self) -> Vec<Vec<ElementIndex>> {
        self.mul.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Relabels along a bijection `perm` (old index -> new index). Zero and
    /// one stay at indices 0 and 1.
    pub fn permuted(&self, perm: &[ElementIndex]) -> Result<Self> {
        let n = self.n;
        let mut seen = vec![false; n];
        let bijective = perm.len() == n && perm.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true));
        if !bijective || perm[0] != 0 || (n > 1 && perm[1] != 1) {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a bijection fixing 0 and 1")));
        }
        let mut add = vec![SubsetMask::EMPTY; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[perm[a] * n + perm[b]] = self.add(a, b).map(|x| perm[x]);
                mul[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        let mut labels = vec![String::new(); n];
        for a in 0..n {
            labels[perm[a]] = self.labels[a].clone();
        }
        Ok(Self::from_masks(n, add, mul, self.partial)?.with_labels(labels))
    }
}

/// Canonical hypergroup axioms for `(H, +)`.
///
/// In partial mode empty sums are allowed and associativity is required
/// only where both bracketings are nonempty.
pub fn check_canonical_hypergroup(h: &FiniteHyperring) -> AxiomReport {
    let n = h.n;
    let mut rep = AxiomReport::new();
    for a in 0..n {
        rep.check(h.add(a, 0) == SubsetMask::singleton(a), "identity", [a]);
        let inv = (0..n).filter(|&x| h.add(a, x).contains(0)).count();
        rep.check(inv == 1, "inverse", [a]);
        rep.check(h.neg(h.neg(a)) == a, "involution", [a]);
        for b in 0..n {
            rep.check(h.add(a, b) == h.add(b, a), "commutativity", [a, b]);
            if !h.partial {
                rep.check(!h.add(a, b).is_empty(), "nonempty", [a, b]);
            }
        }
    }
    for a in 0..n {
        let sa = SubsetMask::singleton(a);
        for b in 0..n {
            let ab = h.add(a, b);
            for c in 0..n {
                let sc = SubsetMask::singleton(c);
                let left = h.extend(ab, sc);
                let right = h.extend(sa, h.add(b, c));
                let relevant = !h.partial || (!left.is_empty() && !right.is_empty());
                rep.check(!relevant || left == right, "associativity", [a, b, c]);
                let fwd = h.add(b, c).contains(a);
                let back = h.add(a, h.neg(b)).contains(c);
                rep.check(fwd == back, "reversibility", [a, b, c]);
            }
        }
    }
    rep
}

/// Hyperring axioms: hypergroup, commutative unital monoid, distributivity
/// and absorbing zero. In partial mode distributivity, like associativity,
/// is required only where both sides are nonempty (`0 * (1 + 1)` is empty
/// in the unit field of the integers while `0 + 0` is not).
pub fn check_hyperring(h: &FiniteHyperring) -> AxiomReport {
    let mut rep = check_canonical_hypergroup(h);
    let n = h.n;
    let one = h.one();
    for a in 0..n {
        rep.check(h.mul(a, one) == a, "mul-identity", [a]);
        rep.check(h.mul(a, 0) == 0, "zero-absorbing", [a]);
        for b in 0..n {
            rep.check(h.mul(a, b) == h.mul(b, a), "mul-commutativity", [a, b]);
            for c in 0..n {
                rep.check(
                    h.mul(h.mul(a, b), c) == h.mul(a, h.mul(b, c)),
                    "mul-associativity",
                    [a, b, c],
                );
                let left = h.add(b, c).map(|x| h.mul(a, x));
                let right = h.add(h.mul(a, b), h.mul(a, c));
                let relevant = !h.partial || (!left.is_empty() && !right.is_empty());
                rep.check(!relevant || left == right, "distributivity", [a, b, c]);
            }
        }
    }
    rep
}

/// Hyperring axioms plus: the nonzero elements form a group under `*`.
pub fn check_hyperfield(h: &FiniteHyperring) -> AxiomReport {
    let mut rep = check_hyperring(h);
    rep.check(h.n >= 2, "nontrivial", Vec::<usize>::new());
    for a in 1..h.n {
        rep.check(h.inverse(a).is_some(), "mul-inverse", [a]);
        for b in 1..h.n {
            rep.check(h.mul(a, b) != 0, "no-zero-divisors", [a, b]);
        }
    }
    rep
}

/// `(a+b)(c+d) = ac+ad+bc+bd` for all quadruples.
pub fn check_doubly_distributive(h: &FiniteHyperring) -> AxiomReport {
    let n = h.n;
    let mut rep = AxiomReport::new();
    for a in 0..n {
        for b in a..n {
            let ab = h.add(a, b);
            for c in 0..n {
                for d in c..n {
                    let left = h.mul_masks(ab, h.add(c, d));
                    let right = h.sum(&[h.mul(a, c), h.mul(a, d), h.mul(b, c), h.mul(b, d)]);
                    rep.check(left == right, "double-distributivity", [a, b, c, d]);
                }
            }
        }
    }
    rep
}

/// Homomorphism conditions for `f: R -> S`; `strict` asks for equality in
/// `f(a+b) ⊆ f(a)+f(b)`.
pub fn check_hom(f: &[ElementIndex], r: &FiniteHyperring, s: &FiniteHyperring, strict: bool) -> AxiomReport {
    let mut rep = AxiomReport::new();
    if f.len() != r.n || f.iter().any(|&x| x >= s.n) {
        rep.fail("well-defined", Vec::<usize>::new());
        return rep;
    }
    rep.check(f[0] == 0, "zero", [0]);
    rep.check(f[r.one()] == s.one(), "one", [r.one()]);
    for a in 0..r.n {
        for b in 0..r.n {
            rep.check(f[r.mul(a, b)] == s.mul(f[a], f[b]), "multiplicativity", [a, b]);
            let image = r.add(a, b).map(|x| f[x]);
            let target = s.add(f[a], f[b]);
            rep.check(image.is_subset(target), "additivity", [a, b]);
            if strict {
                rep.check(image == target, "strictness", [a, b]);
            }
        }
    }
    rep
}

/// Whether a partial assignment (entries `< n_assigned` are fixed) is still
/// consistent with being a homomorphism.
fn partial_hom_ok(
    f: &[ElementIndex],
    upto: usize,
    r: &FiniteHyperring,
    s: &FiniteHyperring,
    strict: bool,
) -> bool {
    let last = upto - 1;
    for a in 0..upto {
        for &(x, y) in &[(a, last), (last, a)] {
            let p = r.mul(x, y);
            if p < upto && f[p] != s.mul(f[x], f[y]) {
                return false;
            }
            let sum = r.add(x, y);
            if sum.iter().all(|z| z < upto) {
                let image = sum.map(|z| f[z]);
                let target = s.add(f[x], f[y]);
                if !image.is_subset(target) || (strict && image != target) {
                    return false;
                }
            }
        }
    }
    true
}

fn extend_homs(
    f: &mut Vec<ElementIndex>,
    r: &FiniteHyperring,
    s: &FiniteHyperring,
    strict: bool,
    out: &mut Vec<Vec<ElementIndex>>,
) {
    let i = f.len();
    if i == r.n {
        if check_hom(f, r, s, strict).passed() {
            out.push(f.clone());
        }
        return;
    }
    for v in 0..s.n {
        f.push(v);
        if partial_hom_ok(f, i + 1, r, s, strict) {
            extend_homs(f, r, s, strict, out);
        }
        f.pop();
    }
}

/// Every homomorphism `R -> S` (strict ones when `strict`), sorted.
pub fn enumerate_homs(r: &FiniteHyperring, s: &FiniteHyperring, strict: bool) -> Result<Vec<MorphismTable>> {
    if r.n > HOM_ENUM_CAP {
        return Err(Error::CarrierTooLarge { size: r.n, cap: HOM_ENUM_CAP });
    }
    let mut seeds: Vec<Vec<ElementIndex>> = Vec::new();
    if r.n == 1 {
        seeds.push(vec![0]);
    } else {
        let base = vec![0, s.one()];
        if partial_hom_ok(&base[..1], 1, r, s, strict) && partial_hom_ok(&base, 2, r, s, strict) {
            if r.n == 2 {
                seeds.push(base);
            } else {
                for v in 0..s.n {
                    let mut f = base.clone();
                    f.push(v);
                    if partial_hom_ok(&f, 3, r, s, strict) {
                        seeds.push(f);
                    }
                }
            }
        }
    }
    let mut maps: Vec<Vec<ElementIndex>> = seeds
        .into_par_iter()
        .flat_map_iter(|mut f| {
            let mut out = Vec::new();
            extend_homs(&mut f, r, s, strict, &mut out);
            out
        })
        .collect();
    maps.sort();
    Ok(maps
        .into_iter()
        .map(|m| MorphismTable::total(MorphismKind::HyperringHom, m))
        .collect())
}

/// Per-element invariants preserved by isomorphisms, used to prune.
fn profile(h: &FiniteHyperring, a: ElementIndex) -> (usize, usize, usize, bool) {
    let mut order = 0;
    if a != 0 {
        let mut x = a;
        order = 1;
        while x != h.one() && order <= h.n {
            x = h.mul(x, a);
            order += 1;
        }
    }
    (order, h.add(a, a).len(), h.add(a, h.one()).len(), h.add(a, a).contains(0))
}

/// A strict bijective homomorphism `R -> S`, if one exists. Its inverse is
/// then automatically a strict homomorphism.
pub fn iso_hyper(r: &FiniteHyperring, s: &FiniteHyperring) -> Option<Vec<ElementIndex>> {
    if r.n != s.n || r.partial != s.partial {
        return None;
    }
    let pr: Vec<_> = (0..r.n).map(|a| profile(r, a)).collect();
    let ps: Vec<_> = (0..s.n).map(|a| profile(s, a)).collect();
    let mut sorted_r = pr.clone();
    let mut sorted_s = ps.clone();
    sorted_r.sort();
    sorted_s.sort();
    if sorted_r != sorted_s {
        return None;
    }
    fn go(
        f: &mut Vec<ElementIndex>,
        used: &mut Vec<bool>,
        r: &FiniteHyperring,
        s: &FiniteHyperring,
        pr: &[(usize, usize, usize, bool)],
        ps: &[(usize, usize, usize, bool)],
    ) -> bool {
        let i = f.len();
        if i == r.n {
            return check_hom(f, r, s, true).passed();
        }
        let forced = match i {
            0 => Some(0),
            1 => Some(s.one()),
            _ => None,
        };
        for v in 0..s.n {
            if used[v] || forced.is_some_and(|w| w != v) || pr[i] != ps[v] {
                continue;
            }
            f.push(v);
            used[v] = true;
            if partial_hom_ok(f, i + 1, r, s, true) && go(f, used, r, s, pr, ps) {
                return true;
            }
            used[v] = false;
            f.pop();
        }
        false
    }
    let mut f = Vec::with_capacity(r.n);
    let mut used = vec![false; s.n];
    go(&mut f, &mut used, r, s, &pr, &ps).then_some(f)
}

/// The quotient `R/U` of a commutative ring by a subgroup of its units:
/// classes are `U`-orbits, `[a] + [b] = {[c] : c ∈ aU + bU}`, `[a][b] = [ab]`.
///
/// Classes are ordered by their smallest member, so `[0]` and `[1]` keep
/// indices 0 and 1.
pub fn quotient(ring: &FiniteRing, u: SubsetMask) -> Result<FiniteHyperring> {
    let units = ring.units();
    if u.is_empty() || !u.contains(ring.one()) {
        return Err(Error::NotASubgroup("must contain 1".into()));
    }
    if !u.is_subset(units) {
        return Err(Error::NotASubgroup("contains a non-unit".into()));
    }
    for a in u {
        for b in u {
            if !u.contains(ring.mul(a, b)) {
                return Err(Error::NotASubgroup(format!("not closed: {a}*{b}")));
            }
        }
    }
    let rn = ring.size();
    let mut class_of = vec![usize::MAX; rn];
    let mut reps = Vec::new();
    for a in 0..rn {
        if class_of[a] != usize::MAX {
            continue;
        }
        let k = reps.len();
        reps.push(a);
        for x in u {
            class_of[ring.mul(a, x)] = k;
        }
    }
    let n = reps.len();
    let mut add = vec![SubsetMask::EMPTY; n * n];
    let mut mul = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (reps[i], reps[j]);
            let mut m = SubsetMask::EMPTY;
            for x in u {
                for y in u {
                    m = m.with(class_of[ring.add(ring.mul(a, x), ring.mul(b, y))]);
                }
            }
            add[i * n + j] = m;
            mul[i * n + j] = class_of[ring.mul(a, b)];
        }
    }
    let labels = reps.iter().map(|r| format!("[{r}]")).collect();
    Ok(FiniteHyperring::from_masks(n, add, mul, false)?.with_labels(labels))
}

/// A finite abelian group as a multiplication table with the identity at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    m: usize,
    table: Vec<usize>,
}

impl AbelianGroup {
    pub fn new(m: usize, table: Vec<usize>) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyCarrier);
        }
        if table.len() != m * m {
            return Err(Error::TableShape { table: "group", expected: m * m, found: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= m) {
            return Err(Error::IndexOutOfRange { table: "group", index: bad, size: m });
        }
        let g = Self { m, table };
        for a in 0..m {
            if g.op(a, 0) != a || !(0..m).any(|b| g.op(a, b) == 0) {
                return Err(Error::InvalidArgument("not a group with identity 0".into()));
            }
            for b in 0..m {
                if g.op(a, b) != g.op(b, a) {
                    return Err(Error::InvalidArgument("group is not abelian".into()));
                }
                for c in 0..m {
                    if g.op(g.op(a, b), c) != g.op(a, g.op(b, c)) {
                        return Err(Error::InvalidArgument("group is not associative".into()));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn cyclic(m: usize) -> Result<Self> {
        Self::new(m, (0..m * m).map(|k| (k / m + k % m) % m).collect())
    }

    /// `Z/2 x Z/2` with elements encoded as two bits.
    pub fn klein_four() -> Self {
        Self::new(4, (0..16).map(|k| (k / 4) ^ (k % 4)).collect()).expect("valid group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.m + b]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }
}

/// The Krasner hyperfield `{0, 1}` with `1 + 1 = {0, 1}`.
pub fn krasner() -> FiniteHyperring {
    let s = SubsetMask::singleton;
    FiniteHyperring::from_masks(2, vec![s(0), s(1), s(1), SubsetMask::full(2)], vec![0, 0, 0, 1], false)
        .expect("valid table")
        .with_labels(vec!["0".into(), "1".into()])
}

/// The hyperfield of signs with `-1` at index 2.
pub fn signs() -> FiniteHyperring {
    let s = SubsetMask::singleton;
    let all = SubsetMask::full(3);
    let add = vec![s(0), s(1), s(2), s(1), s(1), all, s(2), all, s(2)];
    let mul = vec![0, 0, 0, 0, 1, 2, 0, 2, 1];
    FiniteHyperring::from_masks(3, add, mul, false)
        .expect("valid table")
        .with_labels(vec!["0".into(), "1".into(), "-1".into()])
}

/// The one-element structure where `0 = 1`.
pub fn trivial() -> FiniteHyperring {
    FiniteHyperring::from_masks(1, vec![SubsetMask::singleton(0)], vec![0], false).expect("valid table")
}

/// `GF(q)` as a hyperring with singleton sums.
pub fn field(q: usize) -> Result<FiniteHyperring> {
    Ok(FiniteHyperring::from_ring(&FiniteRing::gf(q)?))
}

/// `K[H]`: carrier `{0} ∪ H`, `a + a = {0, a}`, `a + b = H \ {a, b}` for
/// distinct nonzero `a, b`. Group element `h` sits at index `h + 1`.
pub fn kh(h: &AbelianGroup) -> Result<FiniteHyperring> {
    kh_impl(h, false)
}

/// `K[H] ∪ {e, f}` with `e² = e`, `f² = f`, `ef = 0`, `xh = x` for
/// `x ∈ {e, f}`, `b + b = {0, b}` and `b + c = (H ∪ {e, f}) \ {b, c}` for
/// distinct `b, c`. Sums with 0 follow from 0 being the additive identity;
/// every other entry is given by the presentation. `e` and `f` sit at the
/// last two indices.
pub fn khef(h: &AbelianGroup) -> Result<FiniteHyperring> {
    kh_impl(h, true)
}

fn kh_impl(h: &AbelianGroup, with_ef: bool) -> Result<FiniteHyperring> {
    let m = h.order();
    if m < 4 {
        return Err(Error::InvalidArgument(format!("K[H] needs |H| >= 4, got {m}")));
    }
    let n = m + 1 + if with_ef { 2 } else { 0 };
    if n > MAX_CARRIER {
        return Err(Error::CarrierTooLarge { size: n, cap: MAX_CARRIER });
    }
    let (e, f) = (m + 1, m + 2);
    let nonzero = SubsetMask::full(n).without(0);
    let mut add = vec![SubsetMask::EMPTY; n * n];
    let mut mul = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            add[a * n + b] = if a == 0 {
                SubsetMask::singleton(b)
            } else if b == 0 {
                SubsetMask::singleton(a)
            } else if a == b {
                SubsetMask::from_elems([0, a])
            } else {
                nonzero.without(a).without(b)
            };
            mul[a * n + b] = match (a, b) {
                (0, _) | (_, 0) => 0,
                (x, y) if x <= m && y <= m => h.op(x - 1, y - 1) + 1,
                (x, y) if x == y => x,
                (x, y) if x > m && y > m => 0,
                (x, y) => x.max(y),
            };
        }
    }
    let mut labels: Vec<String> = std::iter::once("0".to_string())
        .chain((0..m).map(|g| format!("h{g}")))
        .collect();
    if with_ef {
        labels.push("e".into());
        labels.push("f".into());
    }
    if with_ef {
        debug_assert!(mul[e * n + f] == 0 && mul[e * n + e] == e);
    }
    Ok(FiniteHyperring::from_masks(n, add, mul, false)?.with_labels(labels))
}

/// Named hyperrings: `krasner`, `signs`, `trivial`, `field<q>`, and
/// `kh-<group>` / `khef-<group>` with group `klein` or `c<m>`.
pub fn builtin_hyper(name: &str) -> Result<FiniteHyperring> {
    let group = |g: &str| -> Result<AbelianGroup> {
        match g {
            "klein" => Ok(AbelianGroup::klein_four()),
            _ => match g.strip_prefix('c').and_then(|m| m.parse().ok()) {
                Some(m) => AbelianGroup::cyclic(m),
                None => Err(Error::InvalidArgument(format!("unknown group {g:?}"))),
            },
        }
    };
    match name {
        "krasner" => Ok(krasner()),
        "signs" => Ok(signs()),
        "trivial" => Ok(trivial()),
        _ => {
            if let Some(g) = name.strip_prefix("khef-") {
                khef(&group(g)?)
            } else if let Some(g) = name.strip_prefix("kh-") {
                kh(&group(g)?)
            } else if let Some(q) = name.strip_prefix("field").and_then(|q| q.parse().ok()) {
                field(q)
            } else {
                Err(Error::InvalidArgument(format!("unknown hyperring {name:?}")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gallery_axioms() {
        assert!(check_hyperfield(&krasner()).passed());
        assert!(check_hyperfield(&signs()).passed());
        assert!(check_canonical_hypergroup(&trivial()).passed());
        assert!(check_hyperring(&trivial()).passed());
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = field(q).unwrap();
            assert!(check_hyperfield(&f).passed(), "GF({q})");
            assert!(check_doubly_distributive(&f).passed(), "GF({q})");
        }
    }

    #[test]
    fn kh_and_khef() {
        let v4 = AbelianGroup::klein_four();
        let k = kh(&v4).unwrap();
        assert!(check_hyperfield(&k).passed(), "{}", check_hyperfield(&k));
        let kef = khef(&v4).unwrap();
        assert_eq!(kef.size(), 7);
        assert!(check_hyperring(&kef).passed(), "{}", check_hyperring(&kef));
        let hf = check_hyperfield(&kef);
        assert!(hf.has("mul-inverse"));
        assert!(kh(&AbelianGroup::cyclic(3).unwrap()).is_err());
        let c5 = kh(&AbelianGroup::cyclic(5).unwrap()).unwrap();
        assert!(check_hyperfield(&c5).passed());
    }

    #[test]
    fn mutated_signs_fail_with_witness() {
        let s = signs();
        let mut add = s.add_table().entries().to_vec();
        add[3 + 2] = SubsetMask::singleton(0);
        add[2 * 3 + 1] = SubsetMask::singleton(0);
        let m = FiniteHyperring::from_masks(3, add, s.mul_table().to_vec(), false).unwrap();
        let rep = check_canonical_hypergroup(&m);
        assert!(rep.has("reversibility"));
        assert!(!rep.first("reversibility").unwrap().witness.is_empty());
    }

    #[test]
    fn mutated_signs_not_doubly_distributive() {
        // 1 + 1 = (-1) + (-1) = {1, -1}: (1+1)(1+1) = {1,-1} but 1+1+1+1 is everything
        let s = signs();
        let mut add = s.add_table().entries().to_vec();
        add[3 + 1] = SubsetMask::from_elems([1, 2]);
        add[2 * 3 + 2] = SubsetMask::from_elems([1, 2]);
        let m = FiniteHyperring::from_masks(3, add, s.mul_table().to_vec(), false).unwrap();
        let rep = check_doubly_distributive(&m);
        assert_eq!(rep.first("double-distributivity").unwrap().witness.len(), 4);
        assert!(check_doubly_distributive(&krasner()).passed());
        assert!(check_doubly_distributive(&signs()).passed());
    }

    #[test]
    fn homs_between_krasner_and_signs() {
        let (k, s) = (krasner(), signs());
        let f = [0, 1, 1];
        assert!(check_hom(&f, &s, &k, false).passed());
        assert!(!check_hom(&f, &s, &k, true).passed());
        let g = [0, 1];
        let rep = check_hom(&g, &k, &s, false);
        assert_eq!(rep.first("additivity").unwrap().witness, vec![1, 1]);
        assert!(enumerate_homs(&k, &s, false).unwrap().is_empty());
        assert_eq!(enumerate_homs(&s, &k, false).unwrap().len(), 1);
        assert!(check_hom(&[0, 1, 2], &s, &s, true).passed());
    }

    #[test]
    fn quotients() {
        let gf4 = FiniteRing::gf(4).unwrap();
        let q = quotient(&gf4, gf4.units()).unwrap();
        assert!(iso_hyper(&q, &krasner()).is_some());
        assert!(iso_hyper(&krasner(), &signs()).is_none());
        let gf5 = FiniteRing::gf(5).unwrap();
        let q1 = quotient(&gf5, SubsetMask::singleton(1)).unwrap();
        assert_eq!(q1, field(5).unwrap().with_labels(q1.labels().to_vec()));
        let q2 = quotient(&gf5, SubsetMask::from_elems([1, 4])).unwrap();
        assert_eq!(q2.size(), 3);
        assert_eq!(q2.add(1, 1), SubsetMask::from_elems([0, 2]));
        assert!(check_hyperfield(&q2).passed());
        assert!(quotient(&gf5, SubsetMask::from_elems([1, 2])).is_err());
    }

    #[test]
    fn named_builtins() {
        assert_eq!(builtin_hyper("signs").unwrap(), signs());
        assert_eq!(builtin_hyper("field5").unwrap(), field(5).unwrap());
        assert_eq!(builtin_hyper("khef-klein").unwrap().size(), 7);
        assert_eq!(builtin_hyper("kh-c5").unwrap().size(), 6);
        assert!(builtin_hyper("kh-c3").is_err());
        assert!(builtin_hyper("kh-z").is_err());
        assert!(builtin_hyper("nope").is_err());
    }

    #[test]
    fn permuted_is_isomorphic() {
        let k = kh(&AbelianGroup::klein_four()).unwrap();
        let perm = vec![0, 1, 4, 2, 3];
        let p = k.permuted(&perm).unwrap();
        let iso = iso_hyper(&k, &p).unwrap();
        assert!(check_hom(&iso, &k, &p, true).passed());
    }
}
