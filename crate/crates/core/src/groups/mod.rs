//! Finite group actions on finite variable spaces.
//!
//! Group elements are indices into a Cayley table. An action is a table
//! `act[g][x]` over point indices, composed so that
//! `act(g, act(h, x)) = act(g·h, x)`.

pub mod fixtures;
mod measure;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{Operator, C64};

pub use measure::{invariant_measure, InvariantMeasure, OrbitNormalization, Side};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    cayley: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validate a Cayley table: Latin square, two-sided identity,
    /// associativity.
    pub fn new(cayley: Vec<Vec<usize>>) -> Result<Self> {
        let n = cayley.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty Cayley table".into()));
        }
        for row in &cayley {
            if row.len() != n {
                return Err(Error::InvalidGroup("Cayley table is not square".into()));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidGroup(
                        "Cayley table is not a Latin square".into(),
                    ));
                }
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for row in &cayley {
                if std::mem::replace(&mut seen[row[c]], true) {
                    return Err(Error::InvalidGroup(
                        "Cayley table is not a Latin square".into(),
                    ));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| cayley[e][g] == g && cayley[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| cayley[g][h] == identity)
                    .expect("Latin square row")
            })
            .collect();
        Ok(FiniteGroup {
            cayley,
            identity,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            cayley: vec![vec![0]],
            identity: 0,
            inverse: vec![0],
        }
    }

    pub fn cyclic(n: usize) -> Self {
        let cayley = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let inverse = (0..n).map(|a| (n - a) % n).collect();
        FiniteGroup {
            cayley,
            identity: 0,
            inverse,
        }
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn product(&self, g: usize, h: usize) -> usize {
        self.cayley[g][h]
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    /// Subgroup generated by closing `elements` under products.
    /// Returns `None` when the set is not closed (a finite subset closed
    /// under products is a subgroup).
    pub fn subgroup(&self, elements: &[usize]) -> Option<Subgroup> {
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut cayley = Vec::with_capacity(elems.len());
        for &a in &elems {
            let mut row = Vec::with_capacity(elems.len());
            for &b in &elems {
                row.push(*pos.get(&self.product(a, b))?);
            }
            cayley.push(row);
        }
        let group = FiniteGroup::new(cayley).ok()?;
        Some(Subgroup {
            group,
            elements: elems,
        })
    }
}

/// Subgroup together with its embedding into the parent group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub group: FiniteGroup,
    /// Parent index of each subgroup element, ascending.
    pub elements: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, parent_element: usize) -> bool {
        self.elements.binary_search(&parent_element).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    space: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl GroupAction {
    /// Validate `table[g][x]` against the action axioms.
    pub fn new(group: FiniteGroup, space: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = space.len();
        if table.len() != group.order() || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup(
                "action table shape does not match group and space".into(),
            ));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup(
                "action table points outside the space".into(),
            ));
        }
        let action = GroupAction {
            group,
            space,
            table,
        };
        if let Some(msg) = action.axiom_violation() {
            return Err(Error::InvalidGroup(msg));
        }
        Ok(action)
    }

    /// The permutation group generated by `generators` acting on `space`.
    /// Each generator lists the image of every point.
    pub fn from_generators(space: Vec<String>, generators: &[Vec<usize>]) -> Result<Self> {
        let n = space.len();
        for g in generators {
            let mut seen = vec![false; n];
            if g.len() != n
                || g.iter()
                    .any(|&x| x >= n || std::mem::replace(&mut seen[x], true))
            {
                return Err(Error::InvalidGroup(
                    "generator is not a permutation of the space".into(),
                ));
            }
        }
        let id: Vec<usize> = (0..n).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut frontier = 0;
        while frontier < elems.len() {
            let current = elems[frontier].clone();
            for g in generators {
                let next: Vec<usize> = current.iter().map(|&x| g[x]).collect();
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elems.len());
                    elems.push(next);
                }
            }
            frontier += 1;
        }
        // (g·h)(x) = g(h(x))
        let cayley = elems
            .iter()
            .map(|g| {
                elems
                    .iter()
                    .map(|h| index[&h.iter().map(|&x| g[x]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        let group = FiniteGroup::new(cayley)?;
        GroupAction::new(group, space, elems)
    }

    /// Trivial group acting on `space`.
    pub fn trivial(space: Vec<String>) -> Self {
        let n = space.len();
        GroupAction {
            group: FiniteGroup::trivial(),
            space,
            table: vec![(0..n).collect()],
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn space(&self) -> &[String] {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.table[g][x]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// First violated axiom, if any: `act(e, x) = x` and
    /// `act(g, act(h, x)) = act(gh, x)` over all g, h, x.
    pub fn axiom_violation(&self) -> Option<String> {
        let e = self.group.identity();
        for x in 0..self.len() {
            if self.act(e, x) != x {
                return Some(format!("identity moves point {x}"));
            }
        }
        for g in 0..self.group.order() {
            for h in 0..self.group.order() {
                let gh = self.group.product(g, h);
                for x in 0..self.len() {
                    if self.act(g, self.act(h, x)) != self.act(gh, x) {
                        return Some(format!("compatibility fails for g={g}, h={h}, x={x}"));
                    }
                }
            }
        }
        None
    }

    /// Restrict to a subgroup.
    pub fn restrict(&self, sub: &Subgroup) -> GroupAction {
        GroupAction {
            group: sub.group.clone(),
            space: self.space.clone(),
            table: sub
                .elements
                .iter()
                .map(|&g| self.table[g].clone())
                .collect(),
        }
    }

    /// Elements acting as the identity on every point.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| (0..self.len()).all(|x| self.act(g, x) == x))
            .collect()
    }
}

/// A map from a finite space onto a finite value set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableMap {
    domain: Vec<String>,
    codomain: Vec<String>,
    map: Vec<usize>,
}

impl VariableMap {
    /// Label each domain point with a value. The codomain is the set of
    /// distinct labels in order of first appearance, so it equals the image.
    pub fn from_labels<L: ToString>(domain: Vec<String>, labels: &[L]) -> Result<Self> {
        if labels.len() != domain.len() {
            return Err(Error::SpaceMismatch(format!(
                "{} labels for {} points",
                labels.len(),
                domain.len()
            )));
        }
        let mut codomain: Vec<String> = Vec::new();
        let mut map = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.to_string();
            let idx = match codomain.iter().position(|c| *c == l) {
                Some(i) => i,
                None => {
                    codomain.push(l);
                    codomain.len() - 1
                }
            };
            map.push(idx);
        }
        Ok(VariableMap {
            domain,
            codomain,
            map,
        })
    }

    pub fn identity(domain: Vec<String>) -> Self {
        let labels = domain.clone();
        Self::from_labels(domain, &labels).expect("same length")
    }

    pub fn constant(domain: Vec<String>, value: &str) -> Self {
        let labels = vec![value; domain.len()];
        Self::from_labels(domain, &labels).expect("same length")
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn codomain(&self) -> &[String] {
        &self.codomain
    }

    pub fn value(&self, point: usize) -> usize {
        self.map[point]
    }

    /// Points grouped by value.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut f = vec![Vec::new(); self.codomain.len()];
        for (x, &v) in self.map.iter().enumerate() {
            f[v].push(x);
        }
        f
    }

    fn require_domain(&self, n: usize) -> Result<()> {
        if self.domain.len() != n {
            return Err(Error::SpaceMismatch(format!(
                "variable defined on {} points, action on {n}",
                self.domain.len()
            )));
        }
        Ok(())
    }
}

/// Whether `g` maps fibers of `theta` into fibers of `theta`.
fn respects_fibers(theta: &VariableMap, action: &GroupAction, g: usize) -> bool {
    let mut image: Vec<Option<usize>> = vec![None; theta.codomain.len()];
    for x in 0..action.len() {
        let v = theta.value(x);
        let w = theta.value(action.act(g, x));
        match image[v] {
            None => image[v] = Some(w),
            Some(prev) if prev != w => return false,
            _ => {}
        }
    }
    true
}

/// True iff `θ(φ1) = θ(φ2)` implies `θ(kφ1) = θ(kφ2)` for every group element.
pub fn check_permissible(theta: &VariableMap, action: &GroupAction) -> Result<bool> {
    theta.require_domain(action.len())?;
    Ok((0..action.group.order()).all(|g| respects_fibers(theta, action, g)))
}

/// The action `(gθ)(φ) := θ(kφ)` induced on the values of a permissible
/// variable. The group is unchanged; its elements act through their images
/// on fibers, so kernel elements act trivially.
pub fn induce_action(theta: &VariableMap, action: &GroupAction) -> Result<GroupAction> {
    if !check_permissible(theta, action)? {
        return Err(Error::NotPermissible);
    }
    let fibers = theta.fibers();
    let table = (0..action.group.order())
        .map(|g| {
            fibers
                .iter()
                .map(|f| theta.value(action.act(g, f[0])))
                .collect()
        })
        .collect();
    GroupAction::new(action.group.clone(), theta.codomain.clone(), table)
}

/// Largest subgroup under which `theta` is permissible: all elements whose
/// action on points descends to a map on values.
pub fn maximal_permissible_subgroup(theta: &VariableMap, action: &GroupAction) -> Result<Subgroup> {
    theta.require_domain(action.len())?;
    let members: Vec<usize> = (0..action.group.order())
        .filter(|&g| respects_fibers(theta, action, g))
        .collect();
    Ok(action
        .group
        .subgroup(&members)
        .expect("fiber-respecting elements are closed under products"))
}

/// Orbit partition of a group action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbits {
    /// Blocks ordered by their smallest point; points ascending within a block.
    pub blocks: Vec<Vec<usize>>,
    /// Block index of every point.
    pub block_of: Vec<usize>,
}

impl Orbits {
    pub fn is_transitive(&self) -> bool {
        self.blocks.len() == 1
    }
}

pub fn orbits(action: &GroupAction) -> Orbits {
    let n = action.len();
    let mut block_of = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    for x in 0..n {
        if block_of[x] != usize::MAX {
            continue;
        }
        let b = blocks.len();
        let mut block: Vec<usize> = (0..action.group.order())
            .map(|g| action.act(g, x))
            .collect();
        block.sort_unstable();
        block.dedup();
        for &y in &block {
            block_of[y] = b;
        }
        blocks.push(block);
    }
    Orbits { blocks, block_of }
}

/// True iff `alpha` is a function of `beta`:
/// `β(φ1) = β(φ2) ⇒ α(φ1) = α(φ2)`.
pub fn refines(beta: &VariableMap, alpha: &VariableMap) -> Result<bool> {
    beta.require_domain(alpha.domain.len())?;
    let mut f: Vec<Option<usize>> = vec![None; beta.codomain.len()];
    for x in 0..beta.domain.len() {
        let b = beta.value(x);
        let a = alpha.value(x);
        match f[b] {
            None => f[b] = Some(a),
            Some(prev) if prev != a => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

/// Indices of the maximal elements of `vars` under the refinement order.
/// Equivalent variables (each refining the other) are all reported.
pub fn maximal_elements(vars: &[VariableMap]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    'outer: for (i, v) in vars.iter().enumerate() {
        for (j, w) in vars.iter().enumerate() {
            if i != j && refines(w, v)? && !refines(v, w)? {
                continue 'outer;
            }
        }
        out.push(i);
    }
    Ok(out)
}

/// `g ↦ V(g)`, permutation matrices with `V(g)|x⟩ = |g·x⟩`.
#[derive(Debug, Clone)]
pub struct UnitaryRepresentation {
    pub group: FiniteGroup,
    pub ops: Vec<Operator>,
}

impl UnitaryRepresentation {
    pub fn permutation(action: &GroupAction) -> Self {
        let n = action.len();
        let ops = (0..action.group.order())
            .map(|g| {
                let mut m = nalgebra::DMatrix::<C64>::zeros(n, n);
                for x in 0..n {
                    m[(action.act(g, x), x)] = C64::new(1.0, 0.0);
                }
                Operator::from_matrix(m).expect("square")
            })
            .collect();
        UnitaryRepresentation {
            group: action.group.clone(),
            ops,
        }
    }

    /// `max_{g,h} |V(g)V(h) - V(gh)|`.
    pub fn homomorphism_deviation(&self) -> f64 {
        let n = self.group.order();
        let mut worst: f64 = 0.0;
        for g in 0..n {
            for h in 0..n {
                let lhs = &self.ops[g] * &self.ops[h];
                worst = worst.max((&lhs - &self.ops[self.group.product(g, h)]).norm_max());
            }
        }
        worst
    }
}

/// Structured-text description of a finite action.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub order: usize,
    pub cayley: Vec<Vec<usize>>,
    pub space: Vec<String>,
    /// `action[g][x]` = index of `g·x`.
    pub action: Vec<Vec<usize>>,
}

impl ActionSpec {
    pub fn build(&self) -> Result<GroupAction> {
        if self.cayley.len() != self.order {
            return Err(Error::InvalidGroup(format!(
                "order {} but Cayley table has {} rows",
                self.order,
                self.cayley.len()
            )));
        }
        GroupAction::new(
            FiniteGroup::new(self.cayley.clone())?,
            self.space.clone(),
            self.action.clone(),
        )
    }

    pub fn from_json(text: &str) -> Result<GroupAction> {
        serde_json::from_str::<ActionSpec>(text)?.build()
    }
}

impl From<&GroupAction> for ActionSpec {
    fn from(a: &GroupAction) -> Self {
        ActionSpec {
            order: a.group.order(),
            cayley: a.group.cayley.clone(),
            space: a.space.clone(),
            action: a.table.clone(),
        }
    }
}

/// Map from value label to orbit block, for reports.
pub fn orbit_labels(action: &GroupAction) -> BTreeMap<usize, Vec<String>> {
    orbits(action)
        .blocks
        .into_iter()
        .enumerate()
        .map(|(i, b)| (i, b.into_iter().map(|x| action.space[x].clone()).collect()))
        .collect()
}

#[cfg(test)]
mod tests;
