//! Aut, Inn and Out of small groups by generator-image search.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

/// Automorphism search is capped at this order.
pub const AUT_MAX_ORDER: usize = 256;

/// A bijection of element indices preserving the Cayley table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    images: Vec<u16>,
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Automorphism{:?}", self.images)
    }
}

impl Automorphism {
    pub fn identity(order: usize) -> Self {
        Automorphism {
            images: (0..order as u16).collect(),
        }
    }

    /// Validates `images` against the table of `g`.
    pub fn from_images(g: &Group, images: Vec<usize>) -> Result<Self> {
        let a = Automorphism {
            images: images.into_iter().map(|x| x as u16).collect(),
        };
        if a.is_automorphism_of(g) {
            Ok(a)
        } else {
            Err(Error::NotAnAutomorphism)
        }
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        Automorphism {
            images: images.into_iter().map(|x| x as u16).collect(),
        }
    }

    /// Conjugation `x ↦ g·x·g⁻¹`.
    pub fn conjugation(grp: &Group, g: usize) -> Self {
        Self::from_images_unchecked((0..grp.order()).map(|x| grp.conjugate(g, x)).collect())
    }

    pub fn is_automorphism_of(&self, g: &Group) -> bool {
        let n = g.order();
        if self.images.len() != n || self.images.first() != Some(&0) {
            return false;
        }
        let mut seen = vec![false; n];
        for &y in &self.images {
            let y = y as usize;
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return false;
            }
        }
        (0..n).all(|a| {
            (0..n).all(|b| self.apply(g.mul(a, b)) == g.mul(self.apply(a), self.apply(b)))
        })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }


    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut images = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Automorphism { images }
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = self.compose(&cur);
            k += 1;
        }
        k
    }

    pub fn image_of(&self, g: &Group, h: &Subgroup) -> Subgroup {
        let set = h.members().iter().map(|x| self.apply(x)).collect();
        g.subgroup_from_set(set).expect("image of a subgroup is a subgroup")
    }
}

/// Extends `gens[k] ↦ images[k]` to a homomorphism `src → dst`, returning
/// the image of every element of `src` (as indices into `dst`), or `None`
/// when the assignment does not respect the relations of `src`.
///
/// `gens` must generate `src`.
pub fn extend_to_homomorphism(
    src: &Group,
    gens: &[usize],
    dst: &Group,
    images: &[usize],
) -> Option<Vec<usize>> {
    debug_assert_eq!(gens.len(), images.len());
    let n = src.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let e = queue[i];
        let ie = map[e];
        for (&g, &ig) in gens.iter().zip(images) {
            let next = src.mul(e, g);
            let img = dst.mul(ie, ig);
            if map[next] == usize::MAX {
                map[next] = img;
                queue.push(next);
            } else if map[next] != img {
                return None;
            }
        }
        i += 1;
    }
    if queue.len() != n {
        return None;
    }
    Some(map)
}

/// All isomorphisms from `src` onto the subgroup `target` of `dst`, found by
/// trying every order-compatible image tuple for the designated generators
/// of `src`. Yields maps `src index -> dst index`, in lexicographic order of
/// generator images.
pub fn isomorphisms_onto(src: &Group, dst: &Group, target: &Subgroup) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    search_isomorphisms(src, dst, target, &mut |map| {
        out.push(map);
        true
    });
    out
}

/// The first isomorphism `src → target` in generator-image order.
pub fn first_isomorphism_onto(src: &Group, dst: &Group, target: &Subgroup) -> Option<Vec<usize>> {
    let mut found = None;
    search_isomorphisms(src, dst, target, &mut |map| {
        found = Some(map);
        false
    });
    found
}

/// The last isomorphism `src → target` in generator-image order.
pub fn last_isomorphism_onto(src: &Group, dst: &Group, target: &Subgroup) -> Option<Vec<usize>> {
    let mut found = None;
    search_isomorphisms_rev(src, dst, target, &mut |map| {
        found = Some(map);
        false
    });
    found
}

fn candidates(src: &Group, dst: &Group, target: &Subgroup) -> Vec<Vec<usize>> {
    src.generators()
        .iter()
        .map(|&g| {
            let o = src.element_order(g);
            target
                .members()
                .iter()
                .filter(|&x| dst.element_order(x) == o)
                .collect()
        })
        .collect()
}

fn search_isomorphisms(
    src: &Group,
    dst: &Group,
    target: &Subgroup,
    visit: &mut dyn FnMut(Vec<usize>) -> bool,
) {
    let cands = candidates(src, dst, target);
    walk(src, dst, target, &cands, false, visit);
}

fn search_isomorphisms_rev(
    src: &Group,
    dst: &Group,
    target: &Subgroup,
    visit: &mut dyn FnMut(Vec<usize>) -> bool,
) {
    let cands = candidates(src, dst, target);
    walk(src, dst, target, &cands, true, visit);
}

fn walk(
    src: &Group,
    dst: &Group,
    target: &Subgroup,
    cands: &[Vec<usize>],
    reverse: bool,
    visit: &mut dyn FnMut(Vec<usize>) -> bool,
) {
    if src.order() != target.order() {
        return;
    }
    let gens = src.generators();
    let k = gens.len();
    if k == 0 {
        visit(vec![0]);
        return;
    }
    if cands.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; k];
    let pick = |c: &Vec<usize>, i: usize| if reverse { c[c.len() - 1 - i] } else { c[i] };
    loop {
        let images: Vec<usize> = (0..k).map(|j| pick(&cands[j], idx[j])).collect();
        if let Some(map) = extend_to_homomorphism(src, gens, dst, &images) {
            let mut hit = vec![false; dst.order()];
            let injective = map.iter().all(|&y| !std::mem::replace(&mut hit[y], true));
            if injective && !visit(map) {
                return;
            }
        }
        // odometer, last generator fastest
        let mut j = k;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < cands[j].len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

/// Structure of an Out group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OutStructure {
    /// Invariant-factor decomposition: factor orders (non-increasing) with a
    /// generating coset for each factor.
    Abelian { factors: Vec<(usize, usize)> },
    /// Non-abelian, identified by order and involution count.
    NonAbelian { name: String },
}

/// Out(G) = Aut(G)/Inn(G), with the cosets themselves forming a [`Group`].
#[derive(Clone, Debug)]
pub struct OutGroup {
    /// Coset group; index 0 is Inn(G).
    pub group: Group,
    /// Per coset, indices into [`AutomorphismGroup::automorphisms`]; the
    /// first entry is the least automorphism of the coset.
    pub cosets: Vec<Vec<usize>>,
    pub structure: OutStructure,
    /// For abelian Out, the exponent vector of each coset with respect to the
    /// factor generators.
    pub coordinates: Option<Vec<Vec<usize>>>,
}

impl OutGroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self.structure, OutStructure::Abelian { .. })
    }

    pub fn factor_orders(&self) -> Vec<usize> {
        match &self.structure {
            OutStructure::Abelian { factors } => factors.iter().map(|f| f.0).collect(),
            OutStructure::NonAbelian { .. } => Vec::new(),
        }
    }

    pub fn describe(&self) -> String {
        match &self.structure {
            OutStructure::Abelian { factors } if factors.is_empty() => "1".to_string(),
            OutStructure::Abelian { factors } => factors
                .iter()
                .map(|(o, _)| format!("C{o}"))
                .collect::<Vec<_>>()
                .join(" x "),
            OutStructure::NonAbelian { name } => name.clone(),
        }
    }
}

/// Aut(G) together with Inn(G) and the coset decomposition.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    automorphisms: Vec<Automorphism>,
    index: HashMap<Vec<u16>, usize>,
    inner: Vec<usize>,
    coset_of: Vec<usize>,
    out: OutGroup,
}

impl AutomorphismGroup {
    pub fn compute(g: &Group) -> Result<Self> {
        let automorphisms = automorphism_group(g)?;
        let index: HashMap<Vec<u16>, usize> = automorphisms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.images.clone(), i))
            .collect();
        let mut inner: Vec<usize> = inner_automorphisms(g)
            .iter()
            .map(|a| index[&a.images])
            .collect();
        inner.sort_unstable();

        // Left cosets a∘Inn, discovered in automorphism order so the first
        // coset is Inn itself and every coset starts with its least element.
        let mut coset_of = vec![usize::MAX; automorphisms.len()];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for i in 0..automorphisms.len() {
            if coset_of[i] != usize::MAX {
                continue;
            }
            let id = cosets.len();
            let mut members: Vec<usize> = inner
                .iter()
                .map(|&j| index[&automorphisms[i].compose(&automorphisms[j]).images])
                .collect();
            members.sort_unstable();
            for &m in &members {
                coset_of[m] = id;
            }
            cosets.push(members);
        }
        let k = cosets.len();
        let mut table = Vec::with_capacity(k * k);
        for a in &cosets {
            for b in &cosets {
                let prod = automorphisms[a[0]].compose(&automorphisms[b[0]]);
                table.push(coset_of[index[&prod.images]]);
            }
        }
        let all = Group::from_table(k, table.clone(), (1..k).collect(), None)?;
        let gens = crate::group::minimal_generators(&all, &all.whole());
        let out_group = Group::from_table_unchecked(k, table, gens, None)?;
        let (structure, coordinates) = if out_group.is_abelian() {
            let factors = invariant_factors(&out_group)?;
            let coords = coordinates_for(&out_group, &factors);
            (OutStructure::Abelian { factors }, Some(coords))
        } else {
            (OutStructure::NonAbelian { name: identify_nonabelian(&out_group) }, None)
        };
        Ok(AutomorphismGroup {
            automorphisms,
            index,
            inner,
            coset_of,
            out: OutGroup {
                group: out_group,
                cosets,
                structure,
                coordinates,
            },
        })
    }

    pub fn automorphisms(&self) -> &[Automorphism] {
        &self.automorphisms
    }

    pub fn len(&self) -> usize {
        self.automorphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.automorphisms.is_empty()
    }

    pub fn inner(&self) -> impl Iterator<Item = &Automorphism> {
        self.inner.iter().map(|&i| &self.automorphisms[i])
    }

    pub fn inner_count(&self) -> usize {
        self.inner.len()
    }

    pub fn out_group(&self) -> &OutGroup {
        &self.out
    }

    pub fn index_of(&self, a: &Automorphism) -> Result<usize> {
        self.index.get(&a.images).copied().ok_or(Error::NotAnAutomorphism)
    }

    /// Inn-coset id of `a`.
    pub fn outer_class_of(&self, a: &Automorphism) -> Result<usize> {
        Ok(self.coset_of[self.index_of(a)?])
    }

    pub fn is_inner(&self, a: &Automorphism) -> Result<bool> {
        Ok(self.outer_class_of(a)? == 0)
    }

    /// Image in Out of a set of automorphisms (sorted, deduplicated).
    pub fn out_image(&self, autos: &[Automorphism]) -> Result<Vec<usize>> {
        let mut ids = autos
            .iter()
            .map(|a| self.outer_class_of(a))
            .collect::<Result<Vec<_>>>()?;
        ids.sort_unstable();
        ids.dedup();
        Ok(ids)
    }

    /// A representative automorphism of an Out coset.
    pub fn coset_representative(&self, coset: usize) -> &Automorphism {
        &self.automorphisms[self.out.cosets[coset][0]]
    }
}

/// Every automorphism of `g`, sorted by image vector.
pub fn automorphism_group(g: &Group) -> Result<Vec<Automorphism>> {
    if g.order() > AUT_MAX_ORDER {
        return Err(Error::OrderCapExceeded {
            order: g.order(),
            cap: AUT_MAX_ORDER,
        });
    }
    let mut autos: Vec<Automorphism> = isomorphisms_onto(g, g, &g.whole())
        .into_iter()
        .map(Automorphism::from_images_unchecked)
        .collect();
    autos.sort();
    Ok(autos)
}

/// Conjugation maps, deduplicated and sorted.
pub fn inner_automorphisms(g: &Group) -> Vec<Automorphism> {
    let mut inn: Vec<Automorphism> = (0..g.order()).map(|x| Automorphism::conjugation(g, x)).collect();
    inn.sort();
    inn.dedup();
    inn
}

/// Invariant factors of a finite abelian p-group by exhaustive search:
/// the factor orders are read off from the number of solutions of
/// `x^(p^k) = 1`; generators are then chosen by backtracking, preferring the
/// smallest indices.
pub fn invariant_factors(g: &Group) -> Result<Vec<(usize, usize)>> {
    let n = g.order();
    if n == 1 {
        return Ok(Vec::new());
    }
    let p = (2..=n).find(|d| n % d == 0).expect("n > 1");
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    if m != 1 {
        return Err(Error::CharacterData(format!(
            "Out group of order {n} is not a p-group"
        )));
    }
    // rank_at[k] = #{ i : e_i >= k }
    let log = |mut x: usize| {
        let mut l = 0;
        while x > 1 {
            x /= p;
            l += 1;
        }
        l
    };
    let mut counts = Vec::new();
    let mut pk = 1;
    loop {
        let c = (0..n).filter(|&x| g.pow(x, pk) == 0).count();
        counts.push(log(c));
        if c == n {
            break;
        }
        pk *= p;
    }
    let mut exps: Vec<usize> = Vec::new();
    for k in 1..counts.len() {
        let at_least_k = counts[k] - counts[k - 1];
        for (i, e) in exps.iter_mut().enumerate() {
            if i < at_least_k {
                *e = k;
            }
        }
        while exps.len() < at_least_k {
            exps.push(k);
        }
    }
    let orders: Vec<usize> = exps.iter().map(|&e| p.pow(e as u32)).collect();
    let mut chosen = Vec::new();
    if pick_factors(g, &orders, &mut chosen) {
        Ok(orders.into_iter().zip(chosen).collect())
    } else {
        Err(Error::CharacterData("no invariant-factor basis found".into()))
    }
}

fn pick_factors(g: &Group, orders: &[usize], chosen: &mut Vec<usize>) -> bool {
    let depth = chosen.len();
    if depth == orders.len() {
        return true;
    }
    let target: usize = orders[..=depth].iter().product();
    for x in 0..g.order() {
        if g.element_order(x) != orders[depth] {
            continue;
        }
        chosen.push(x);
        if g.closure(chosen).order() == target && pick_factors(g, orders, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn coordinates_for(g: &Group, factors: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut coords = vec![Vec::new(); g.order()];
    let mut exps = vec![0usize; factors.len()];
    loop {
        let elem = factors
            .iter()
            .zip(&exps)
            .fold(0, |acc, (&(_, gen), &e)| g.mul(acc, g.pow(gen, e)));
        coords[elem] = exps.clone();
        let mut j = 0;
        loop {
            if j == factors.len() {
                return coords;
            }
            exps[j] += 1;
            if exps[j] < factors[j].0 {
                break;
            }
            exps[j] = 0;
            j += 1;
        }
    }
}

fn identify_nonabelian(g: &Group) -> String {
    let involutions = (0..g.order()).filter(|&x| g.element_order(x) == 2).count();
    match (g.order(), involutions) {
        (6, 3) => "S3".to_string(),
        (o, _) => format!("nonabelian({o})"),
    }
}
