//! Finite groups given by multiplication tables, and their character theory.
//!
//! Irreducible characters are found by monomial induction: the linear characters of
//! the whole group first, then characters induced from linear characters of proper
//! subgroups (largest subgroups first), keeping those of norm one, until the squared
//! degrees add up to the group order. Every group handled here is supersolvable, hence
//! monomial, so the search always terminates with a complete table.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::arith;
use crate::cyclonum::CycNum;
use crate::error::{Error, Result};

/// Default upper bound on the group order accepted by [`irr_table`].
pub const DEFAULT_ORDER_BOUND: usize = 200;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    n: usize,
    mult: Vec<u32>,
    inverse: Vec<u32>,
    identity: usize,
    orders: Vec<u64>,
    exponent: u64,
    label: String,
}

impl FiniteGroup {
    /// Build from a full multiplication table, verifying the group axioms.
    pub fn from_table(table: Vec<Vec<usize>>, label: &str) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not square over 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let mut inverse = vec![0u32; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| table[x][y] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no inverse")))?;
            if table[y][x] != identity {
                return Err(Error::InvalidGroup("inverse not two-sided".into()));
            }
            inverse[x] = y as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup("not associative".into()));
                    }
                }
            }
        }
        let mult: Vec<u32> = table.iter().flat_map(|r| r.iter().map(|&x| x as u32)).collect();
        let mut g =
            FiniteGroup { n, mult, inverse, identity, orders: Vec::new(), exponent: 1, label: label.to_string() };
        g.orders = (0..n).map(|x| g.compute_order(x)).collect();
        g.exponent = g.orders.iter().fold(1, |acc, &o| arith::lcm(acc, o));
        Ok(g)
    }

    /// Build from an explicit element list and a multiplication closure.
    pub fn from_elements<T: Ord + Clone>(elems: Vec<T>, mul: impl Fn(&T, &T) -> T, label: &str) -> Result<FiniteGroup> {
        let index: BTreeMap<T, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        if index.len() != elems.len() {
            return Err(Error::InvalidGroup("duplicate elements".into()));
        }
        let mut table = vec![vec![0usize; elems.len()]; elems.len()];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let c = mul(a, b);
                table[i][j] = *index.get(&c).ok_or_else(|| Error::InvalidGroup("not closed".into()))?;
            }
        }
        FiniteGroup::from_table(table, label)
    }

    fn compute_order(&self, x: usize) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn size(&self) -> usize {
        self.n
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn exponent(&self) -> u64 {
        self.exponent
    }
    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.n + b] as usize
    }
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }
    pub fn order_of(&self, a: usize) -> u64 {
        self.orders[a]
    }
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.orders[a];
        let e = arith::modp(k, o);
        let mut r = self.identity;
        for _ in 0..e {
            r = self.mul(r, a);
        }
        r
    }
    pub fn conj(&self, g: usize, x: usize) -> usize {
        // x g x^{-1}
        self.mul(self.mul(x, g), self.inv(x))
    }
    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.n
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        let mut out = vec![self.identity];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// A small generating set of the subgroup with the given elements.
    pub fn generators_of(&self, elems: &[usize]) -> Vec<usize> {
        let mut by_order: Vec<usize> = elems.to_vec();
        by_order.sort_by_key(|&x| core::cmp::Reverse((self.orders[x], core::cmp::Reverse(x))));
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for x in by_order {
            if span.len() == elems.len() {
                break;
            }
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.generated(&gens);
            }
        }
        gens
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        !set.is_empty()
            && set.contains(&self.identity)
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.iter().all(|&h| (0..self.n).all(|x| set.contains(&self.conj(h, x))))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n).filter(|&z| (0..self.n).all(|x| self.mul(z, x) == self.mul(x, z))).collect()
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let mut comms = BTreeSet::new();
        for a in 0..self.n {
            for b in 0..self.n {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                comms.insert(c);
            }
        }
        let gens: Vec<usize> = comms.into_iter().collect();
        self.generated(&gens)
    }

    /// Conjugacy classes, sorted by (element order, class size, least element).
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut classes = Vec::new();
        for g in 0..self.n {
            if seen[g] {
                continue;
            }
            let mut cl: Vec<usize> = (0..self.n).map(|x| self.conj(g, x)).collect();
            cl.sort_unstable();
            cl.dedup();
            for &c in &cl {
                seen[c] = true;
            }
            classes.push(cl);
        }
        classes.sort_by_key(|cl| (self.orders[cl[0]], cl.len(), cl[0]));
        classes
    }

    /// Restrict to a subgroup, producing a standalone group plus the embedding.
    pub fn subgroup(&self, elems: &[usize]) -> Result<Subgroup> {
        let mut elems = elems.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if !self.is_subgroup(&elems) {
            return Err(Error::InvalidSubgroup("elements do not form a subgroup".into()));
        }
        let pos: BTreeMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let table = elems.iter().map(|&a| elems.iter().map(|&b| pos[&self.mul(a, b)]).collect()).collect();
        let group = FiniteGroup::from_table(table, &format!("{}<sub{}>", self.label, elems.len()))?;
        Ok(Subgroup { group, embed: elems })
    }

    /// Quotient by a normal subgroup.
    pub fn quotient(&self, normal: &[usize]) -> Result<Quotient> {
        if !self.is_subgroup(normal) || !self.is_normal(normal) {
            return Err(Error::InvalidSubgroup("not a normal subgroup".into()));
        }
        let mut proj = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n {
            if proj[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &k in normal {
                proj[self.mul(g, k)] = idx;
            }
        }
        let m = reps.len();
        let table = (0..m).map(|i| (0..m).map(|j| proj[self.mul(reps[i], reps[j])]).collect()).collect();
        let group = FiniteGroup::from_table(table, &format!("{}/N{}", self.label, normal.len()))?;
        let mut kernel = normal.to_vec();
        kernel.sort_unstable();
        Ok(Quotient { group, proj, kernel })
    }

    /// Every subgroup, as sorted element lists, largest first.
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut cyclic: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in 0..self.n {
            cyclic.insert(self.generated(&[g]));
        }
        let cyclic: Vec<Vec<usize>> = cyclic.into_iter().collect();
        let mut all: BTreeSet<Vec<usize>> = cyclic.iter().cloned().collect();
        let mut frontier: Vec<Vec<usize>> = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                let sgens = self.generators_of(s);
                for c in &cyclic {
                    let gen = c.iter().copied().find(|&x| self.orders[x] as usize == c.len());
                    let Some(gen) = gen else { continue };
                    if s.binary_search(&gen).is_ok() {
                        continue;
                    }
                    let mut gens = sgens.clone();
                    gens.push(gen);
                    let t = self.generated(&gens);
                    if all.insert(t.clone()) {
                        next.push(t);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Vec<usize>> = all.into_iter().collect();
        out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        out
    }

    /// All homomorphisms `H → Z/e` on the subgroup `elems`, where `e` is the exponent of
    /// the ambient group; entry `k[x]` encodes the linear character value `ζ_e^{k[x]}`.
    /// Elements outside `elems` get `None`.
    pub fn linear_characters_of(&self, elems: &[usize]) -> Vec<Vec<Option<u64>>> {
        let e = self.exponent;
        let gens = self.generators_of(elems);
        let choices: Vec<u64> = gens.iter().map(|&g| self.orders[g]).collect();
        let total: u64 = choices.iter().product();
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let mut gvals = Vec::with_capacity(gens.len());
            for (i, &o) in choices.iter().enumerate() {
                let step = e / self.orders[gens[i]];
                gvals.push((c % o) * step);
                c /= o;
            }
            if let Some(vals) = self.extend_hom(&gens, &gvals) {
                out.push(vals);
            }
        }
        out
    }

    fn extend_hom(&self, gens: &[usize], gvals: &[u64]) -> Option<Vec<Option<u64>>> {
        let e = self.exponent;
        let mut val: Vec<Option<u64>> = vec![None; self.n];
        val[self.identity] = Some(0);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            let vx = val[x].unwrap();
            for (&g, &vg) in gens.iter().zip(gvals) {
                let y = self.mul(x, g);
                let vy = (vx + vg) % e;
                match val[y] {
                    Some(v) if v != vy => return None,
                    Some(_) => {}
                    None => {
                        val[y] = Some(vy);
                        queue.push_back(y);
                    }
                }
            }
        }
        Some(val)
    }
}

/// A subgroup presented as a group in its own right.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: FiniteGroup,
    /// `embed[i]` is the ambient index of the subgroup's element `i`.
    pub embed: Vec<usize>,
}

/// A quotient group together with the projection from the ambient group.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `proj[g]` is the quotient element of ambient element `g`.
    pub proj: Vec<usize>,
    pub kernel: Vec<usize>,
}

/// Presentations of the groups in scope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    Product(Vec<u64>),
    /// Exponent-`p` group of order `p^3`: `<a,b,c | a^p=b^p=c^p=1, ab=bac, c central>`.
    Heisenberg(u64),
    /// Exponent-`p^2` group of order `p^3`: `<a,b | a^{p^2}=1=b^p, b^{-1}ab=a^{1+p}>`.
    Modular(u64),
    /// `C ⋊ (Z/ℓ)^2` with `C` cyclic of order `p` normal, one factor acting faithfully.
    Metacyclic {
        l: u64,
        p: u64,
    },
}

impl GroupSpec {
    /// Parse `cyclic:5`, `product:3x3`, `heisenberg:3`, `modular:3`, `metacyclic:3,7`.
    pub fn parse(s: &str) -> Result<GroupSpec> {
        let (tag, arg) = s.split_once(':').unwrap_or((s, ""));
        let nums = |sep: &[char]| -> Result<Vec<u64>> {
            arg.split(sep)
                .filter(|t| !t.is_empty())
                .map(|t| t.trim().parse::<u64>().map_err(|_| Error::InvalidInput(s.into())))
                .collect()
        };
        let one = || -> Result<u64> {
            let v = nums(&[','])?;
            if v.len() == 1 {
                Ok(v[0])
            } else {
                Err(Error::InvalidInput(format!("expected one parameter in {s}")))
            }
        };
        match tag {
            "cyclic" => Ok(GroupSpec::Cyclic(one()?)),
            "product" => Ok(GroupSpec::Product(nums(&['x', ','])?)),
            "heisenberg" => Ok(GroupSpec::Heisenberg(one()?)),
            "modular" => Ok(GroupSpec::Modular(one()?)),
            "metacyclic" => match nums(&[','])?.as_slice() {
                [l, p] => Ok(GroupSpec::Metacyclic { l: *l, p: *p }),
                _ => Err(Error::InvalidInput(format!("metacyclic needs l,p in {s}"))),
            },
            _ => Err(Error::Unsupported(format!("group spec {s}"))),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            GroupSpec::Cyclic(n) => format!("cyclic:{n}"),
            GroupSpec::Product(ns) => {
                let parts: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
                format!("product:{}", parts.join("x"))
            }
            GroupSpec::Heisenberg(p) => format!("heisenberg:{p}"),
            GroupSpec::Modular(p) => format!("modular:{p}"),
            GroupSpec::Metacyclic { l, p } => format!("metacyclic:{l},{p}"),
        }
    }
}

fn odd_prime(p: u64) -> Result<()> {
    if p < 3 || !arith::is_prime(p) {
        return Err(Error::Unsupported(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// Build the multiplication table for a presentation.
pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    let label = spec.tag();
    match spec {
        GroupSpec::Cyclic(n) => {
            if *n == 0 {
                return Err(Error::Unsupported("cyclic group of order 0".into()));
            }
            let n = *n;
            FiniteGroup::from_elements((0..n).collect(), |a, b| (a + b) % n, &label)
        }
        GroupSpec::Product(ns) => {
            if ns.is_empty() || ns.contains(&0) {
                return Err(Error::Unsupported("product needs positive factors".into()));
            }
            let mut elems: Vec<Vec<u64>> = vec![vec![]];
            for &n in ns {
                elems = elems
                    .into_iter()
                    .flat_map(|v| {
                        (0..n).map(move |i| {
                            let mut w = v.clone();
                            w.push(i);
                            w
                        })
                    })
                    .collect();
            }
            let ns = ns.clone();
            FiniteGroup::from_elements(
                elems,
                |a, b| a.iter().zip(b).zip(&ns).map(|((x, y), n)| (x + y) % n).collect(),
                &label,
            )
        }
        GroupSpec::Heisenberg(p) => {
            odd_prime(*p)?;
            let p = *p;
            let mut elems = Vec::new();
            for a in 0..p {
                for b in 0..p {
                    for c in 0..p {
                        elems.push((a, b, c));
                    }
                }
            }
            // Upper unitriangular matrices [[1,a,c],[0,1,b],[0,0,1]].
            FiniteGroup::from_elements(
                elems,
                |x, y| ((x.0 + y.0) % p, (x.1 + y.1) % p, (x.2 + y.2 + x.0 * y.1) % p),
                &label,
            )
        }
        GroupSpec::Modular(p) => {
            odd_prime(*p)?;
            let p = *p;
            let q = p * p;
            // a^i b^j with b^j a^k = a^{k s^j} b^j, s = (1+p)^{-1} mod p^2.
            let s = arith::inv_mod(1 + p, q).unwrap();
            let mut elems = Vec::new();
            for i in 0..q {
                for j in 0..p {
                    elems.push((i, j));
                }
            }
            FiniteGroup::from_elements(
                elems,
                |x, y| ((x.0 + y.0 * arith::pow_mod(s, x.1, q)) % q, (x.1 + y.1) % p),
                &label,
            )
        }
        GroupSpec::Metacyclic { l, p } => {
            odd_prime(*l)?;
            odd_prime(*p)?;
            let (l, p) = (*l, *p);
            if (p - 1) % l != 0 {
                return Err(Error::Unsupported(format!("{l} does not divide {p}-1")));
            }
            let g = arith::primitive_root_prime_power(p, 1);
            let t = arith::pow_mod(g, (p - 1) / l, p);
            let mut elems = Vec::new();
            for c in 0..p {
                for x in 0..l {
                    for y in 0..l {
                        elems.push((c, x, y));
                    }
                }
            }
            FiniteGroup::from_elements(
                elems,
                |a, b| ((a.0 + arith::pow_mod(t, a.1, p) * b.0) % p, (a.1 + b.1) % l, (a.2 + b.2) % l),
                &label,
            )
        }
    }
}

/// How an irreducible character arises: `ind_H^G(λ)` with `λ` linear on `H`.
#[derive(Clone, Debug)]
pub struct Inducing {
    /// Sorted elements of `H`.
    pub subgroup: Vec<usize>,
    /// `λ(h) = ζ_e^{lambda[h]}` for `h ∈ H` (`e` the exponent of `G`); `None` off `H`.
    pub lambda: Vec<Option<u64>>,
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: usize,
    pub size: usize,
    pub order: u64,
    pub elements: Vec<usize>,
}

/// The character table of a finite group.
#[derive(Clone, Debug)]
pub struct IrrTable {
    group: FiniteGroup,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
    chars: Vec<Vec<CycNum>>,
    degrees: Vec<u64>,
    inducing: Vec<Inducing>,
}

/// Integer coefficients of a virtual character over the irreducibles of a table.
pub type VirtualChar = Vec<i64>;

/// A class function given by its values on the classes of some table.
pub type ClassFn = Vec<CycNum>;

/// A group-ring element `Σ a_g g` stored sparsely.
#[derive(Clone, Debug, Default)]
pub struct GroupRingElt {
    pub terms: Vec<(usize, CycNum)>,
}

impl GroupRingElt {
    pub fn from_terms(terms: Vec<(usize, CycNum)>) -> GroupRingElt {
        GroupRingElt { terms }
    }
    pub fn group_element(g: usize) -> GroupRingElt {
        GroupRingElt { terms: vec![(g, CycNum::one())] }
    }
    pub fn scalar(g_identity: usize, c: CycNum) -> GroupRingElt {
        GroupRingElt { terms: vec![(g_identity, c)] }
    }
    /// Product in the group ring of `g`.
    pub fn mul(&self, other: &GroupRingElt, g: &FiniteGroup) -> GroupRingElt {
        let mut acc: BTreeMap<usize, CycNum> = BTreeMap::new();
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let z = g.mul(*x, *y);
                let t = a * b;
                let entry = acc.entry(z).or_insert_with(|| CycNum::zero(1));
                *entry = &*entry + &t;
            }
        }
        GroupRingElt { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
    pub fn add(&self, other: &GroupRingElt) -> GroupRingElt {
        let mut acc: BTreeMap<usize, CycNum> = BTreeMap::new();
        for (x, a) in self.terms.iter().chain(&other.terms) {
            let entry = acc.entry(*x).or_insert_with(|| CycNum::zero(1));
            *entry = &*entry + a;
        }
        GroupRingElt { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

fn zeta_sum(e: u64, counts: &[i64], scale: &BigRational) -> CycNum {
    let v: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
    CycNum::from_exponent_ints(e, v, BigInt::one()).scale(scale)
}

/// Compute the irreducible characters with the default order bound.
pub fn irr_table(g: &FiniteGroup) -> Result<IrrTable> {
    irr_table_bounded(g, DEFAULT_ORDER_BOUND)
}

/// Compute the irreducible characters of `g` by monomial induction.
pub fn irr_table_bounded(g: &FiniteGroup, bound: usize) -> Result<IrrTable> {
    let n = g.size();
    if n > bound {
        return Err(Error::NotMonomial { order: n });
    }
    let e = g.exponent();
    let class_lists = g.conjugacy_classes();
    let mut class_of = vec![0usize; n];
    for (ci, cl) in class_lists.iter().enumerate() {
        for &x in cl {
            class_of[x] = ci;
        }
    }
    let classes: Vec<ConjClass> = class_lists
        .into_iter()
        .map(|cl| ConjClass { rep: cl[0], size: cl.len(), order: g.order_of(cl[0]), elements: cl })
        .collect();
    let mut found: Vec<(Vec<CycNum>, u64, Inducing)> = Vec::new();
    let mut sum_sq: u64 = 0;

    let all: Vec<usize> = (0..n).collect();
    for lam in g.linear_characters_of(&all) {
        let vals = classes.iter().map(|c| CycNum::zeta(e, lam[c.rep].unwrap() as i64)).collect();
        found.push((vals, 1, Inducing { subgroup: all.clone(), lambda: lam }));
        sum_sq += 1;
    }

    if sum_sq < n as u64 {
        let subgroups = g.all_subgroups();
        for h in subgroups.iter().filter(|h| h.len() < n) {
            let index = (n / h.len()) as u64;
            if n as u64 % index != 0 || sum_sq + index * index > n as u64 {
                continue;
            }
            let lams = g.linear_characters_of(h);
            let candidates = induce_candidates(g, &classes, h, &lams, e);
            for (vals, lam) in candidates {
                if found.iter().any(|(v, _, _)| *v == vals) {
                    continue;
                }
                if !norm_is_one(&classes, &vals, n) {
                    continue;
                }
                found.push((vals, index, Inducing { subgroup: h.clone(), lambda: lam }));
                sum_sq += index * index;
                if sum_sq >= n as u64 {
                    break;
                }
            }
            if sum_sq >= n as u64 {
                break;
            }
        }
    }
    if sum_sq != n as u64 {
        return Err(Error::NotMonomial { order: n });
    }
    found.sort_by(|a, b| {
        a.1.cmp(&b.1).then_with(|| {
            for (x, y) in a.0.iter().zip(&b.0) {
                match y.canonical_cmp(x) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    });
    let degrees = found.iter().map(|f| f.1).collect();
    let mut chars = Vec::with_capacity(found.len());
    let mut inducing = Vec::with_capacity(found.len());
    for (v, _, ind) in found {
        chars.push(v);
        inducing.push(ind);
    }
    Ok(IrrTable { group: g.clone(), classes, class_of, chars, degrees, inducing })
}

fn induce_one(g: &FiniteGroup, classes: &[ConjClass], h: &[usize], lam: &[Option<u64>], e: u64) -> Vec<CycNum> {
    let n = g.size();
    let mut in_class: Vec<Vec<i64>> = vec![vec![0i64; e as usize]; classes.len()];
    let mut class_of = vec![0usize; n];
    for (ci, c) in classes.iter().enumerate() {
        for &x in &c.elements {
            class_of[x] = ci;
        }
    }
    for &x in h {
        in_class[class_of[x]][lam[x].unwrap() as usize] += 1;
    }
    classes
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            let scale = BigRational::new(BigInt::from(n), BigInt::from(h.len() * c.size));
            zeta_sum(e, &in_class[ci], &scale)
        })
        .collect()
}

#[cfg(feature = "parallel")]
fn induce_candidates(
    g: &FiniteGroup,
    classes: &[ConjClass],
    h: &[usize],
    lams: &[Vec<Option<u64>>],
    e: u64,
) -> Vec<(Vec<CycNum>, Vec<Option<u64>>)> {
    use rayon::prelude::*;
    lams.par_iter().map(|lam| (induce_one(g, classes, h, lam, e), lam.clone())).collect()
}

#[cfg(not(feature = "parallel"))]
fn induce_candidates(
    g: &FiniteGroup,
    classes: &[ConjClass],
    h: &[usize],
    lams: &[Vec<Option<u64>>],
    e: u64,
) -> Vec<(Vec<CycNum>, Vec<Option<u64>>)> {
    lams.iter().map(|lam| (induce_one(g, classes, h, lam, e), lam.clone())).collect()
}

fn inner(classes: &[ConjClass], a: &[CycNum], b: &[CycNum], n: usize) -> CycNum {
    let mut acc = CycNum::zero(1);
    for (c, (x, y)) in classes.iter().zip(a.iter().zip(b)) {
        let t = (x * &y.conj()).mul_int(c.size as i64);
        acc = &acc + &t;
    }
    acc.scale(&BigRational::new(BigInt::one(), BigInt::from(n)))
}

fn norm_is_one(classes: &[ConjClass], v: &[CycNum], n: usize) -> bool {
    inner(classes, v, v, n).is_one()
}

impl IrrTable {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }
    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }
    pub fn num_chars(&self) -> usize {
        self.chars.len()
    }
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }
    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }
    pub fn values(&self, i: usize) -> &[CycNum] {
        &self.chars[i]
    }
    pub fn inducing(&self, i: usize) -> &Inducing {
        &self.inducing[i]
    }
    pub fn exponent(&self) -> u64 {
        self.group.exponent()
    }
    /// `χ_i(g)` for a group element.
    pub fn value_at(&self, i: usize, g: usize) -> &CycNum {
        &self.chars[i][self.class_of[g]]
    }
    /// Index of the trivial character.
    pub fn trivial_index(&self) -> usize {
        (0..self.chars.len())
            .find(|&i| self.degrees[i] == 1 && self.chars[i].iter().all(|v| v.is_one()))
            .expect("trivial character present")
    }

    /// `⟨a, b⟩_G` for class functions on this table's classes.
    pub fn inner_product(&self, a: &[CycNum], b: &[CycNum]) -> CycNum {
        inner(&self.classes, a, b, self.group.size())
    }

    /// Coefficients of a class function over the irreducibles; fails if not virtual.
    pub fn decompose(&self, f: &[CycNum]) -> Result<VirtualChar> {
        self.chars
            .iter()
            .map(|chi| {
                let ip = self.inner_product(f, chi);
                ip.as_rational()
                    .filter(|q| q.is_integer())
                    .and_then(|q| q.to_integer().to_i64())
                    .ok_or_else(|| Error::LookupFailed("class function is not a virtual character".into()))
            })
            .collect()
    }

    /// Values of a virtual character.
    pub fn class_fn(&self, v: &[i64]) -> ClassFn {
        let mut out = vec![CycNum::zero(1); self.classes.len()];
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                for (k, val) in self.chars[i].iter().enumerate() {
                    out[k] = &out[k] + &val.mul_int(c);
                }
            }
        }
        out
    }

    pub fn unit_vector(&self, i: usize) -> VirtualChar {
        let mut v = vec![0; self.chars.len()];
        v[i] = 1;
        v
    }

    /// Index of the irreducible with the given values.
    pub fn find(&self, vals: &[CycNum]) -> Option<usize> {
        self.chars.iter().position(|c| c.as_slice() == vals)
    }

    /// The Adams operation `ψ_k`: the class function `g ↦ χ(g^k)`, decomposed.
    pub fn adams(&self, chi: &[i64], k: i64) -> Result<VirtualChar> {
        let n = self.group.size() as u64;
        if arith::gcd(arith::modp(k, n), n) != 1 {
            return Err(Error::NotCoprime { k, modulus: n });
        }
        let f = self.class_fn(chi);
        let fk: Vec<CycNum> = self.classes.iter().map(|c| f[self.class_of[self.group.pow(c.rep, k)]].clone()).collect();
        self.decompose(&fk)
    }

    /// Index of `ψ_k(χ_i)`, which is irreducible when `k` is prime to `|G|`.
    pub fn adams_index(&self, i: usize, k: i64) -> Result<usize> {
        let v = self.adams(&self.unit_vector(i), k)?;
        let nz: Vec<(usize, i64)> = v.iter().copied().enumerate().filter(|(_, c)| *c != 0).collect();
        match nz.as_slice() {
            [(j, 1)] => Ok(*j),
            _ => Err(Error::LookupFailed(format!("ψ_{k} of character {i} is not irreducible"))),
        }
    }

    /// Index of `ω_k ∘ χ_i` where `ω_k : ζ ↦ ζ^k`.
    pub fn galois_twist(&self, i: usize, k: i64) -> Result<usize> {
        let e = self.exponent();
        if arith::gcd(arith::modp(k, e), e) != 1 {
            return Err(Error::NotCoprime { k, modulus: e });
        }
        let vals: Vec<CycNum> = self.chars[i].iter().map(|v| v.galois_apply(k)).collect::<Result<_>>()?;
        self.find(&vals).ok_or_else(|| Error::LookupFailed(format!("galois twist of {i} by {k}")))
    }

    /// Galois orbits on the irreducibles, each sorted, ordered by least member.
    pub fn galois_orbits(&self) -> Vec<Vec<usize>> {
        let e = self.exponent();
        let units: Vec<i64> = (1..=e).filter(|&k| arith::gcd(k, e) == 1).map(|k| k as i64).collect();
        let mut seen = vec![false; self.chars.len()];
        let mut orbits = Vec::new();
        for i in 0..self.chars.len() {
            if seen[i] {
                continue;
            }
            let mut orb: Vec<usize> = units.iter().map(|&k| self.galois_twist(i, k).unwrap()).collect();
            orb.sort_unstable();
            orb.dedup();
            for &j in &orb {
                seen[j] = true;
            }
            orbits.push(orb);
        }
        orbits
    }

    /// Frobenius–Schur indicator `(1/|G|) Σ_g χ(g²)`.
    pub fn fs_indicator(&self, i: usize) -> i64 {
        let g = &self.group;
        let mut acc = CycNum::zero(1);
        for x in g.elements() {
            acc = &acc + self.value_at(i, g.mul(x, x));
        }
        let q = acc.scale(&BigRational::new(BigInt::one(), BigInt::from(g.size())));
        q.as_rational().and_then(|q| q.to_integer().to_i64()).expect("indicator is an integer")
    }

    /// Indices of irreducibles with indicator −1.
    pub fn symplectic_indices(&self) -> Vec<usize> {
        (0..self.chars.len()).filter(|&i| self.fs_indicator(i) == -1).collect()
    }

    /// A monomial representation affording `χ_i`.
    pub fn monomial_rep(&self, i: usize) -> MonomialRep {
        MonomialRep::new(&self.group, &self.inducing[i])
    }

    /// `Det(a)(χ_i) = det T_χ(a)`.
    pub fn det_of(&self, a: &GroupRingElt, i: usize) -> Result<CycNum> {
        if self.degrees[i] == 1 {
            let mut acc = CycNum::zero(1);
            for (g, c) in &a.terms {
                acc = &acc + &(c * self.value_at(i, *g));
            }
            return Ok(acc);
        }
        let rep = self.monomial_rep(i);
        determinant(rep.matrix_of(a, self.exponent()))
    }

    /// `Det` at `χ_i` of a square matrix over the group ring.
    pub fn det_of_matrix(&self, a: &[Vec<GroupRingElt>], i: usize) -> Result<CycNum> {
        let d = a.len();
        let rep = self.monomial_rep(i);
        let m = rep.degree();
        let e = self.exponent();
        let mut big = vec![vec![CycNum::zero(1); d * m]; d * m];
        for (r, row) in a.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                let blk = rep.matrix_of(entry, e);
                for (x, brow) in blk.into_iter().enumerate() {
                    for (y, v) in brow.into_iter().enumerate() {
                        big[r * m + x][c * m + y] = v;
                    }
                }
            }
        }
        determinant(big)
    }
}

/// `ind_H^G(λ)` realised by monomial matrices `ρ(g)_{ij} = λ°(t_i^{-1} g t_j)`.
#[derive(Clone, Debug)]
pub struct MonomialRep {
    pub subgroup: Vec<usize>,
    pub lambda: Vec<Option<u64>>,
    pub transversal: Vec<usize>,
    group: FiniteGroup,
}

impl MonomialRep {
    pub fn new(g: &FiniteGroup, ind: &Inducing) -> MonomialRep {
        let mut covered = vec![false; g.size()];
        let mut transversal = Vec::new();
        for t in g.elements() {
            if covered[t] {
                continue;
            }
            transversal.push(t);
            for &h in &ind.subgroup {
                covered[g.mul(t, h)] = true;
            }
        }
        MonomialRep { subgroup: ind.subgroup.clone(), lambda: ind.lambda.clone(), transversal, group: g.clone() }
    }

    pub fn degree(&self) -> usize {
        self.transversal.len()
    }

    /// `(j, exponent)` such that row `i` of `ρ(g)` is `ζ_e^{exponent}` at column `j`.
    pub fn entry(&self, g: usize, i: usize) -> (usize, u64) {
        let grp = &self.group;
        let ti_inv = grp.inv(self.transversal[i]);
        for (j, &tj) in self.transversal.iter().enumerate() {
            let x = grp.mul(grp.mul(ti_inv, g), tj);
            if let Some(k) = self.lambda[x] {
                return (j, k);
            }
        }
        unreachable!("monomial matrices have one nonzero entry per row")
    }

    /// The matrix `Σ a_g ρ(g)`.
    pub fn matrix_of(&self, a: &GroupRingElt, e: u64) -> Vec<Vec<CycNum>> {
        let m = self.degree();
        let mut out = vec![vec![CycNum::zero(1); m]; m];
        for (g, c) in &a.terms {
            for i in 0..m {
                let (j, k) = self.entry(*g, i);
                out[i][j] = &out[i][j] + &(c * &CycNum::zeta(e, k as i64));
            }
        }
        out
    }

    pub fn trace(&self, g: usize, e: u64) -> CycNum {
        let mut acc = CycNum::zero(1);
        for i in 0..self.degree() {
            let (j, k) = self.entry(g, i);
            if i == j {
                acc = &acc + &CycNum::zeta(e, k as i64);
            }
        }
        acc
    }
}

/// Determinant over a cyclotomic field by Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<CycNum>>) -> Result<CycNum> {
    let n = m.len();
    let mut det = CycNum::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Ok(CycNum::zero(1));
        };
        if piv != c {
            m.swap(piv, c);
            det = -det;
        }
        det = &det * &m[c][c];
        let inv = m[c][c].inv()?;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] * &inv;
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] = &m[r][k] - &t;
            }
        }
    }
    Ok(det)
}

/// `ind_H^G f` for a class function `f` on the subgroup's table.
pub fn induce(h_tab: &IrrTable, g_tab: &IrrTable, sub: &Subgroup, f: &[CycNum]) -> Result<ClassFn> {
    check_embedding(g_tab, sub)?;
    let g = g_tab.group();
    let n = g.size();
    let mut sums = vec![CycNum::zero(1); g_tab.classes.len()];
    for (hi, &x) in sub.embed.iter().enumerate() {
        let ci = g_tab.class_of(x);
        sums[ci] = &sums[ci] + &f[h_tab.class_of(hi)];
    }
    Ok(sums
        .into_iter()
        .zip(&g_tab.classes)
        .map(|(s, c)| s.scale(&BigRational::new(BigInt::from(n), BigInt::from(sub.embed.len() * c.size))))
        .collect())
}

/// `res^G_H f`.
pub fn restrict(g_tab: &IrrTable, h_tab: &IrrTable, sub: &Subgroup, f: &[CycNum]) -> Result<ClassFn> {
    check_embedding(g_tab, sub)?;
    Ok(h_tab.classes.iter().map(|c| f[g_tab.class_of(sub.embed[c.rep])].clone()).collect())
}

/// `inf_{G/N}^G f`.
pub fn inflate(q_tab: &IrrTable, g_tab: &IrrTable, quo: &Quotient, f: &[CycNum]) -> Result<ClassFn> {
    if quo.proj.len() != g_tab.group().size() {
        return Err(Error::InvalidSubgroup("quotient map does not match group".into()));
    }
    Ok(g_tab.classes.iter().map(|c| f[q_tab.class_of(quo.proj[c.rep])].clone()).collect())
}

fn check_embedding(g_tab: &IrrTable, sub: &Subgroup) -> Result<()> {
    let g = g_tab.group();
    if sub.embed.iter().any(|&x| x >= g.size()) || !g.is_subgroup(&sub.embed) {
        return Err(Error::InvalidSubgroup("embedding is not a subgroup".into()));
    }
    let h = &sub.group;
    for a in h.elements() {
        for b in h.elements() {
            if sub.embed[h.mul(a, b)] != g.mul(sub.embed[a], sub.embed[b]) {
                return Err(Error::InvalidSubgroup("embedding is not a homomorphism".into()));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(spec: &str) -> IrrTable {
        irr_table(&build_group(&GroupSpec::parse(spec).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn presentations() {
        let h = build_group(&GroupSpec::Heisenberg(3)).unwrap();
        assert_eq!((h.size(), h.exponent(), h.center().len()), (27, 3, 3));
        let m = build_group(&GroupSpec::Modular(3)).unwrap();
        assert_eq!((m.size(), m.exponent(), m.center().len()), (27, 9, 3));
        assert!(!m.is_abelian());
        let t = build_group(&GroupSpec::Cyclic(1)).unwrap();
        assert_eq!(t.size(), 1);
        assert!(build_group(&GroupSpec::Heisenberg(4)).is_err());
    }

    #[test]
    fn heisenberg_degrees() {
        let t = table("heisenberg:3");
        let mut d = t.degrees().to_vec();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3]);
        assert_eq!(t.trivial_index(), 0);
    }

    #[test]
    fn cyclic_five() {
        let t = table("cyclic:5");
        assert_eq!(t.degrees(), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn order_63_degrees_sum() {
        let t = table("metacyclic:3,7");
        let s: u64 = t.degrees().iter().map(|d| d * d).sum();
        assert_eq!(s, 63);
        assert_eq!(t.degrees().iter().filter(|&&d| d == 3).count(), 6);
    }

    #[test]
    fn adams_on_degree_three() {
        let t = table("heisenberg:3");
        let i = t.degrees().iter().position(|&d| d == 3).unwrap();
        let v = t.adams(&t.unit_vector(i), 2).unwrap();
        let j = t.adams_index(i, 2).unwrap();
        assert_eq!(t.degree(j), 3);
        assert_eq!(v, t.unit_vector(j));
        // Oracle: decompose g ↦ χ(g²) through inner products directly.
        let f: Vec<CycNum> = t.classes().iter().map(|c| t.value_at(i, t.group().pow(c.rep, 2)).clone()).collect();
        assert!(t.inner_product(&f, t.values(j)).is_one());
        assert_eq!(t.galois_twist(i, 2).unwrap(), j);
    }

    #[test]
    fn adams_errors_for_non_coprime() {
        let t = table("cyclic:3");
        assert!(t.adams(&t.unit_vector(1), 3).is_err());
    }

    #[test]
    fn twist_of_linear_is_square() {
        let t = table("cyclic:3");
        let i = 1;
        let j = t.galois_twist(i, 2).unwrap();
        let sq: Vec<CycNum> = t.values(i).iter().map(|v| v * v).collect();
        assert_eq!(t.values(j), sq.as_slice());
    }

    #[test]
    fn indicators_for_odd_order() {
        let t = table("heisenberg:3");
        assert_eq!(t.fs_indicator(t.trivial_index()), 1);
        for i in 0..t.num_chars() {
            if i != t.trivial_index() {
                assert_eq!(t.fs_indicator(i), 0);
            }
        }
    }

    #[test]
    fn det_of_identity_and_monomial_oracle() {
        let t = table("heisenberg:3");
        let g = t.group();
        let i = t.degrees().iter().position(|&d| d == 3).unwrap();
        let one = GroupRingElt::group_element(g.identity());
        assert!(t.det_of(&one, i).unwrap().is_one());
        let a = GroupRingElt::from_terms(vec![(1, CycNum::one()), (5, CycNum::one())]);
        let rep = t.monomial_rep(i);
        let m = rep.matrix_of(&a, t.exponent());
        // 3×3 determinant by cofactor expansion.
        let c = |r: usize, s: usize| m[r][s].clone();
        let minor = |a: usize, b: usize, cc: usize, d: usize| &(&c(1, a) * &c(2, b)) - &(&c(1, cc) * &c(2, d));
        let cof =
            &(&(&c(0, 0) * &minor(1, 2, 2, 1)) - &(&c(0, 1) * &minor(0, 2, 2, 0))) + &(&c(0, 2) * &minor(0, 1, 1, 0));
        assert_eq!(t.det_of(&a, i).unwrap(), cof);
        for x in g.elements() {
            assert_eq!(&rep.trace(x, t.exponent()), t.value_at(i, x));
        }
    }
}
