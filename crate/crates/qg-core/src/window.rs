//! Finite balls in discrete groups, modelling truncated duals of compact quantum groups.
//!
//! Products leaving the ball are reported as out-of-window rather than
//! silently dropped; callers either shrink their radius or raise
//! [`QgError::WindowTruncation`].

use std::collections::HashMap;

use crate::group::FiniteGroup;
use crate::QgError;

/// Default bound on the number of window elements.
pub const DEFAULT_WINDOW_CAP: usize = 200_000;

/// The discrete group underlying a window.
#[derive(Debug, Clone, PartialEq)]
pub enum WindowGroup {
    /// Free group on `rank` generators with the standard word length.
    Free { rank: usize },
    /// `ℤ^rank` with the ℓ¹ word length.
    Lattice { rank: usize },
    /// `ℤ_order` with the word length from the generator `1`.
    Cyclic { order: usize },
    /// A finite group with the word length from a symmetric generating set.
    Custom { group: FiniteGroup, generators: Vec<usize> },
}

impl WindowGroup {
    pub fn label(&self) -> String {
        match self {
            WindowGroup::Free { rank } => format!("free({rank})"),
            WindowGroup::Lattice { rank } => format!("Z({rank})"),
            WindowGroup::Cyclic { order } => format!("cyclic({order})"),
            WindowGroup::Custom { group, .. } => group.name.clone(),
        }
    }
}

#[derive(Debug, Clone)]
enum Storage {
    /// `ℤ` stored arithmetically: index `0, 1, 2, 3, 4, …` is `0, 1, −1, 2, −2, …`.
    Line,
    /// Explicit keys with a lookup table.
    Table { keys: Vec<Vec<i64>>, lookup: HashMap<Vec<i64>, usize>, lengths: Vec<usize> },
}

/// A ball of radius `r` in a discrete group.
///
/// Elements are ordered by word length with the identity at index 0.
#[derive(Debug, Clone)]
pub struct GroupDualWindow {
    group: WindowGroup,
    radius: usize,
    len: usize,
    storage: Storage,
}

impl GroupDualWindow {
    /// Builds the ball of the given radius with the default element cap.
    pub fn build(group: WindowGroup, radius: usize) -> Result<Self, QgError> {
        Self::build_with_cap(group, radius, DEFAULT_WINDOW_CAP)
    }

    /// Builds the ball with an explicit cap on the element count.
    pub fn build_with_cap(group: WindowGroup, radius: usize, cap: usize) -> Result<Self, QgError> {
        if radius == 0 {
            return Err(QgError::Schema("window radius must be at least 1".into()));
        }
        let count = element_count(&group, radius);
        if count > cap {
            return Err(QgError::RadiusTooLarge { count, cap });
        }
        if let WindowGroup::Lattice { rank: 1 } = group {
            return Ok(Self { group, radius, len: count, storage: Storage::Line });
        }
        let keys = enumerate(&group, radius)?;
        let lookup = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        let lengths = keys.iter().map(|k| key_length(&group, k)).collect();
        let len = keys.len();
        Ok(Self { group, radius, len, storage: Storage::Table { keys, lookup, lengths } })
    }

    pub fn group(&self) -> &WindowGroup {
        &self.group
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Every irrep of a group dual is one-dimensional.
    pub fn max_irrep_dim(&self) -> usize {
        1
    }

    /// Word length `|g|`.
    pub fn length(&self, g: usize) -> usize {
        match &self.storage {
            Storage::Line => g.div_ceil(2),
            Storage::Table { lengths, .. } => lengths[g],
        }
    }

    /// The integer represented by `g` in a `ℤ` window, if this is one.
    pub fn as_integer(&self, g: usize) -> Option<i64> {
        match &self.storage {
            Storage::Line => Some(line_value(g)),
            Storage::Table { keys, .. } => match self.group {
                WindowGroup::Free { rank: 1 } => Some(keys[g].iter().map(|&l| l.signum()).sum()),
                _ => None,
            },
        }
    }

    /// Index of the integer `m` in a `ℤ` window.
    pub fn from_integer(&self, m: i64) -> Option<usize> {
        match &self.storage {
            Storage::Line => {
                let idx = line_index(m);
                (m.unsigned_abs() as usize <= self.radius).then_some(idx)
            }
            Storage::Table { lookup, .. } => match self.group {
                WindowGroup::Free { rank: 1 } => {
                    let letter = if m >= 0 { 1 } else { -1 };
                    lookup.get(&vec![letter; m.unsigned_abs() as usize]).copied()
                }
                _ => None,
            },
        }
    }

    /// The element with the given key: a reduced word for free groups
    /// (letters `±1..=±k`), coordinates for lattices, a residue for cyclic
    /// groups, a table index for custom groups.
    pub fn find(&self, key: &[i64]) -> Option<usize> {
        match &self.storage {
            Storage::Line => key.first().and_then(|&m| if key.len() == 1 { self.from_integer(m) } else { None }),
            Storage::Table { lookup, .. } => lookup.get(key).copied(),
        }
    }

    pub fn key(&self, g: usize) -> Vec<i64> {
        match &self.storage {
            Storage::Line => vec![line_value(g)],
            Storage::Table { keys, .. } => keys[g].clone(),
        }
    }

    pub fn label(&self, g: usize) -> String {
        match (&self.group, &self.storage) {
            (_, Storage::Line) => line_value(g).to_string(),
            (WindowGroup::Free { .. }, Storage::Table { keys, .. }) => {
                if keys[g].is_empty() {
                    "e".into()
                } else {
                    keys[g].iter().map(|&l| letter_char(l)).collect()
                }
            }
            (WindowGroup::Custom { group, .. }, Storage::Table { keys, .. }) => {
                group.labels[keys[g][0] as usize].clone()
            }
            (_, Storage::Table { keys, .. }) => {
                let parts: Vec<String> = keys[g].iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    pub fn inverse(&self, g: usize) -> usize {
        match &self.storage {
            Storage::Line => line_index(-line_value(g)),
            Storage::Table { keys, lookup, .. } => {
                let inv = key_inverse(&self.group, &keys[g]);
                lookup[&inv]
            }
        }
    }

    /// `gh` when it lies in the window; `None` means out of window.
    pub fn product(&self, g: usize, h: usize) -> Option<usize> {
        match &self.storage {
            Storage::Line => {
                let m = line_value(g) + line_value(h);
                self.from_integer(m)
            }
            Storage::Table { keys, lookup, .. } => {
                let p = key_product(&self.group, &keys[g], &keys[h]);
                lookup.get(&p).copied()
            }
        }
    }

    /// `gh`, raising `WindowTruncation` when it leaves the window.
    pub fn product_in_window(&self, g: usize, h: usize) -> Result<usize, QgError> {
        self.product(g, h).ok_or_else(|| {
            QgError::WindowTruncation(format!(
                "{}·{} leaves the radius-{} window of {}",
                self.label(g),
                self.label(h),
                self.radius,
                self.group.label()
            ))
        })
    }

    /// `g⁻¹h`, raising `WindowTruncation` when out of window.
    pub fn quotient_in_window(&self, g: usize, h: usize) -> Result<usize, QgError> {
        self.product_in_window(self.inverse(g), h)
    }

    /// Indices of the elements of length at most `r`, in window order.
    pub fn ball(&self, r: usize) -> Vec<usize> {
        let r = r.min(self.radius);
        match &self.storage {
            Storage::Line => (0..(2 * r + 1)).collect(),
            Storage::Table { lengths, .. } => (0..self.len).filter(|&g| lengths[g] <= r).collect(),
        }
    }

    /// Checks the window invariants: identity, involutive length-preserving
    /// inverse, products defined within the length budget and associativity
    /// where every intermediate product is in the window.
    pub fn check_invariants(&self) -> Result<(), QgError> {
        let fail = |m: String| Err(QgError::AxiomViolation { axiom: m, residual: 1.0 });
        if self.length(0) != 0 {
            return fail("identity has length 0".into());
        }
        let n = self.len;
        for g in 0..n {
            let gi = self.inverse(g);
            if self.inverse(gi) != g || self.length(gi) != self.length(g) {
                return fail(format!("inverse of {} is an involution preserving length", self.label(g)));
            }
            if self.product(g, gi) != Some(0) || self.product(0, g) != Some(g) || self.product(g, 0) != Some(g) {
                return fail(format!("identity and inverse laws at {}", self.label(g)));
            }
        }
        // Exhaustive pair and triple checks only on small windows.
        let sample: Vec<usize> = if n <= 60 { (0..n).collect() } else { self.ball(2.min(self.radius)) };
        for &a in &sample {
            for &b in &sample {
                let ab = self.product(a, b);
                if self.length(a) + self.length(b) <= self.radius && ab.is_none() {
                    return fail(format!(
                        "product {}·{} defined within the length budget",
                        self.label(a),
                        self.label(b)
                    ));
                }
                for &c in &sample {
                    let left = ab.and_then(|x| self.product(x, c));
                    let right = self.product(b, c).and_then(|y| self.product(a, y));
                    if let (Some(l), Some(r)) = (left, right) {
                        if l != r {
                            return fail("associativity on in-window products".into());
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn line_value(g: usize) -> i64 {
    let k = g.div_ceil(2) as i64;
    if g % 2 == 1 {
        k
    } else {
        -k
    }
}

fn line_index(m: i64) -> usize {
    if m > 0 {
        (2 * m - 1) as usize
    } else {
        (2 * -m) as usize
    }
}

fn letter_char(l: i64) -> char {
    let base = (l.unsigned_abs() - 1) as u8;
    if l > 0 {
        (b'a' + base) as char
    } else {
        (b'A' + base) as char
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r: usize = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Number of elements of the ball, saturating on overflow.
pub fn element_count(group: &WindowGroup, radius: usize) -> usize {
    match group {
        WindowGroup::Free { rank } => {
            let k = *rank;
            if k == 0 {
                return 1;
            }
            let mut total: usize = 1;
            let mut layer: usize = 2 * k;
            for _ in 0..radius {
                total = total.saturating_add(layer);
                layer = layer.saturating_mul(2 * k - 1);
                if total == usize::MAX {
                    break;
                }
            }
            total
        }
        WindowGroup::Lattice { rank } => (0..=(*rank).min(radius)).fold(0usize, |acc, k| {
            acc.saturating_add(binom(*rank, k).saturating_mul(1usize << k.min(62)).saturating_mul(binom(radius, k)))
        }),
        WindowGroup::Cyclic { order } => (*order).min(2 * radius + 1),
        WindowGroup::Custom { group, .. } => group.order(),
    }
}

fn enumerate(group: &WindowGroup, radius: usize) -> Result<Vec<Vec<i64>>, QgError> {
    match group {
        WindowGroup::Free { rank } => {
            let k = *rank as i64;
            let mut out = vec![Vec::new()];
            let mut frontier: Vec<Vec<i64>> = vec![Vec::new()];
            for _ in 0..radius {
                let mut next = Vec::new();
                for w in &frontier {
                    for l in (1..=k).flat_map(|x| [x, -x]) {
                        if w.last() == Some(&-l) {
                            continue;
                        }
                        let mut v = w.clone();
                        v.push(l);
                        next.push(v);
                    }
                }
                out.extend(next.iter().cloned());
                frontier = next;
            }
            Ok(out)
        }
        WindowGroup::Lattice { rank } => {
            let mut out = vec![vec![0i64; *rank]];
            let mut seen: std::collections::HashSet<Vec<i64>> = out.iter().cloned().collect();
            let mut frontier = out.clone();
            for _ in 0..radius {
                let mut next = Vec::new();
                for p in &frontier {
                    for axis in 0..*rank {
                        for s in [1, -1] {
                            let mut q = p.clone();
                            q[axis] += s;
                            if seen.insert(q.clone()) {
                                next.push(q);
                            }
                        }
                    }
                }
                out.extend(next.iter().cloned());
                frontier = next;
            }
            Ok(out)
        }
        WindowGroup::Cyclic { order } => {
            let n = *order as i64;
            if n == 0 {
                return Err(QgError::Schema("cyclic order must be positive".into()));
            }
            let mut out = vec![vec![0]];
            for r in 1..=radius as i64 {
                for v in [r.rem_euclid(n), (-r).rem_euclid(n)] {
                    if !out.contains(&vec![v]) {
                        out.push(vec![v]);
                    }
                }
            }
            Ok(out)
        }
        WindowGroup::Custom { group, generators } => {
            if generators.iter().any(|&g| g >= group.order()) {
                return Err(QgError::Schema("generator index out of range".into()));
            }
            let mut dist = vec![usize::MAX; group.order()];
            dist[group.identity] = 0;
            let mut out = vec![vec![group.identity as i64]];
            let mut frontier = vec![group.identity];
            for r in 1..=radius {
                let mut next = Vec::new();
                for &x in &frontier {
                    for &g in generators.iter().flat_map(|g| [g, &group.inverse[*g]]) {
                        let y = group.table[x][g];
                        if dist[y] == usize::MAX {
                            dist[y] = r;
                            next.push(y);
                            out.push(vec![y as i64]);
                        }
                    }
                }
                frontier = next;
            }
            Ok(out)
        }
    }
}

fn key_length(group: &WindowGroup, key: &[i64]) -> usize {
    match group {
        WindowGroup::Free { .. } => key.len(),
        WindowGroup::Lattice { .. } => key.iter().map(|x| x.unsigned_abs() as usize).sum(),
        WindowGroup::Cyclic { order } => {
            let v = key[0] as usize;
            v.min(order - v)
        }
        WindowGroup::Custom { group, generators } => {
            // Breadth-first distance from the identity.
            let target = key[0] as usize;
            let mut dist = vec![usize::MAX; group.order()];
            dist[group.identity] = 0;
            let mut queue = std::collections::VecDeque::from([group.identity]);
            while let Some(x) = queue.pop_front() {
                if x == target {
                    return dist[x];
                }
                for &g in generators.iter().flat_map(|g| [g, &group.inverse[*g]]) {
                    let y = group.table[x][g];
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            usize::MAX
        }
    }
}

fn key_inverse(group: &WindowGroup, key: &[i64]) -> Vec<i64> {
    match group {
        WindowGroup::Free { .. } => key.iter().rev().map(|l| -l).collect(),
        WindowGroup::Lattice { .. } => key.iter().map(|x| -x).collect(),
        WindowGroup::Cyclic { order } => vec![(-key[0]).rem_euclid(*order as i64)],
        WindowGroup::Custom { group, .. } => vec![group.inverse[key[0] as usize] as i64],
    }
}

fn key_product(group: &WindowGroup, a: &[i64], b: &[i64]) -> Vec<i64> {
    match group {
        WindowGroup::Free { .. } => {
            let mut w = a.to_vec();
            for &l in b {
                if w.last() == Some(&-l) {
                    w.pop();
                } else {
                    w.push(l);
                }
            }
            w
        }
        WindowGroup::Lattice { .. } => a.iter().zip(b).map(|(x, y)| x + y).collect(),
        WindowGroup::Cyclic { order } => vec![(a[0] + b[0]).rem_euclid(*order as i64)],
        WindowGroup::Custom { group, .. } => vec![group.table[a[0] as usize][b[0] as usize] as i64],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free2_radius2_has_17_elements() {
        let w = GroupDualWindow::build(WindowGroup::Free { rank: 2 }, 2).unwrap();
        assert_eq!(w.len(), 17);
        assert_eq!(w.ball(1).len(), 5);
        w.check_invariants().unwrap();
    }

    #[test]
    fn z1_radius3() {
        let w = GroupDualWindow::build(WindowGroup::Lattice { rank: 1 }, 3).unwrap();
        assert_eq!(w.len(), 7);
        let ints: Vec<i64> = (0..7).map(|g| w.as_integer(g).unwrap()).collect();
        let mut sorted = ints.clone();
        sorted.sort();
        assert_eq!(sorted, vec![-3, -2, -1, 0, 1, 2, 3]);
        for g in 0..7 {
            for h in 0..7 {
                let s = w.as_integer(g).unwrap() + w.as_integer(h).unwrap();
                assert_eq!(w.product(g, h).is_some(), s.abs() <= 3);
                if let Some(p) = w.product(g, h) {
                    assert_eq!(w.as_integer(p), Some(s));
                }
            }
        }
        w.check_invariants().unwrap();
    }

    #[test]
    fn free1_matches_z1() {
        let f = GroupDualWindow::build(WindowGroup::Free { rank: 1 }, 4).unwrap();
        let z = GroupDualWindow::build(WindowGroup::Lattice { rank: 1 }, 4).unwrap();
        assert_eq!(f.len(), z.len());
        for g in 0..f.len() {
            let m = f.as_integer(g).unwrap();
            let zg = z.from_integer(m).unwrap();
            assert_eq!(f.length(g), z.length(zg));
            for h in 0..f.len() {
                let fp = f.product(g, h).map(|p| f.as_integer(p).unwrap());
                let zp =
                    z.product(zg, z.from_integer(f.as_integer(h).unwrap()).unwrap()).map(|p| z.as_integer(p).unwrap());
                assert_eq!(fp, zp);
            }
        }
    }

    #[test]
    fn radius_cap() {
        let err = GroupDualWindow::build(WindowGroup::Free { rank: 3 }, 12).unwrap_err();
        assert!(matches!(err, QgError::RadiusTooLarge { .. }));
        assert!(GroupDualWindow::build(WindowGroup::Free { rank: 2 }, 0).is_err());
    }

    #[test]
    fn lattice_and_cyclic_counts() {
        let w = GroupDualWindow::build(WindowGroup::Lattice { rank: 2 }, 3).unwrap();
        assert_eq!(w.len(), 25);
        assert_eq!(element_count(&WindowGroup::Lattice { rank: 2 }, 3), 25);
        w.check_invariants().unwrap();
        let c = GroupDualWindow::build(WindowGroup::Cyclic { order: 5 }, 7).unwrap();
        assert_eq!(c.len(), 5);
        assert!(c.product(3, 4).is_some());
        c.check_invariants().unwrap();
    }

    #[test]
    fn custom_s3_window() {
        let (g, _) = FiniteGroup::s3_with_standard_rep();
        let w = GroupDualWindow::build(WindowGroup::Custom { group: g, generators: vec![1, 2] }, 3).unwrap();
        assert_eq!(w.len(), 6);
        w.check_invariants().unwrap();
    }

    #[test]
    fn truncation_is_reported() {
        let w = GroupDualWindow::build(WindowGroup::Free { rank: 2 }, 1).unwrap();
        let a = w.find(&[1]).unwrap();
        let b = w.find(&[2]).unwrap();
        assert!(matches!(w.product_in_window(a, b), Err(QgError::WindowTruncation(_))));
    }
}
