//! Roots as integer ε/δ vectors, grouped into lines, and positive systems.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::superlie::{root_decomposition, Elem, LieSuperAlgebra};

pub type Root = Vec<i64>;

pub fn neg(a: &[i64]) -> Root {
    a.iter().map(|x| -x).collect()
}

pub fn add(a: &[i64], b: &[i64]) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn double(a: &[i64]) -> Root {
    a.iter().map(|x| 2 * x).collect()
}

fn lex_positive(a: &[i64]) -> bool {
    a.iter().find(|&&x| x != 0).copied().unwrap_or(0) > 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LineType {
    /// {±δ}, δ even.
    Even,
    /// {±δ}, δ odd and 2δ not a root.
    Odd,
    /// {±δ, ±2δ}, δ odd.
    OddWithDouble,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootLine {
    /// The lexicographically positive primitive root of the line.
    pub delta: Root,
    pub kind: LineType,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSystem {
    /// Root → parity.
    pub roots: BTreeMap<Root, u8>,
    pub lines: Vec<RootLine>,
    /// Diagonal of the invariant form in ε/δ coordinates.
    pub form: Vec<i64>,
    #[serde(skip)]
    pub spaces: BTreeMap<Root, Vec<Elem>>,
}

impl RootSystem {
    pub fn new(roots: Vec<(Root, u8)>, form: Vec<i64>) -> Result<RootSystem> {
        let map: BTreeMap<Root, u8> = roots.into_iter().collect();
        for (r, &par) in &map {
            if map.get(&neg(r)) != Some(&par) {
                return Err(Error::Violation(format!("root {r:?} has no negative of the same parity")));
            }
            if r.len() != form.len() {
                return Err(Error::Dimension("root length differs from the form".into()));
            }
        }
        let mut lines = Vec::new();
        for (r, &par) in &map {
            if !lex_positive(r) {
                continue;
            }
            let half_is_odd_root = r.iter().all(|x| x % 2 == 0) && map.get(&r.iter().map(|x| x / 2).collect::<Root>()) == Some(&1);
            if half_is_odd_root {
                if par != 0 {
                    return Err(Error::Violation(format!("2δ = {r:?} is odd")));
                }
                continue;
            }
            let kind = match (par, map.get(&double(r))) {
                (0, _) => LineType::Even,
                (_, None) => LineType::Odd,
                (_, Some(0)) => LineType::OddWithDouble,
                _ => return Err(Error::Violation(format!("2δ for δ = {r:?} is odd"))),
            };
            lines.push(RootLine { delta: r.clone(), kind });
        }
        Ok(RootSystem { roots: map, lines, form, spaces: BTreeMap::new() })
    }

    /// Roots of g with respect to its standard Cartan subalgebra.
    pub fn from_algebra(g: &LieSuperAlgebra) -> Result<RootSystem> {
        let model = g.model.as_ref().ok_or_else(|| Error::Unsupported("root coordinates need a matrix model".into()))?;
        let rd = root_decomposition(g, &g.cartan)?;
        let mut roots = Vec::new();
        let mut spaces = BTreeMap::new();
        for r in rd.roots {
            let c = r.coords.ok_or_else(|| Error::Unsupported("roots have no integer coordinates".into()))?;
            if spaces.insert(c.clone(), r.basis).is_some() {
                return Err(Error::Unsupported(format!("root {c:?} occurs in two parities")));
            }
            roots.push((c, r.parity));
        }
        let mut rs = RootSystem::new(roots, model.weight_form.clone())?;
        rs.spaces = spaces;
        Ok(rs)
    }

    pub fn parity(&self, a: &[i64]) -> Option<u8> {
        self.roots.get(a).copied()
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        self.roots.contains_key(a)
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        a.iter().zip(b).zip(&self.form).map(|((x, y), w)| x * y * w).sum()
    }

    /// δ* = {δ, 2δ} when δ is odd and 2δ is a root, otherwise {δ}.
    pub fn star(&self, d: &[i64]) -> Vec<Root> {
        let dd = double(d);
        if self.parity(d) == Some(1) && self.contains(&dd) {
            vec![d.to_vec(), dd]
        } else {
            vec![d.to_vec()]
        }
    }

    /// False for 2δ on a type-(iii) line.
    pub fn is_primitive(&self, a: &[i64]) -> bool {
        !(a.iter().all(|x| x % 2 == 0) && self.parity(&a.iter().map(|x| x / 2).collect::<Root>()) == Some(1))
    }

    pub fn rank(&self) -> usize {
        self.form.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositiveSystem {
    pub positive: BTreeSet<Root>,
    /// Sorted.
    pub simple: Vec<Root>,
}

impl PositiveSystem {
    /// Validates a candidate positive set: one of ±α per root, and every
    /// positive root a nonnegative integer combination of linearly
    /// independent indecomposable roots.
    pub fn from_positive(rs: &RootSystem, positive: BTreeSet<Root>) -> Result<PositiveSystem> {
        for r in rs.roots.keys() {
            if positive.contains(r) == positive.contains(&neg(r)) {
                return Err(Error::Violation(format!("exactly one of ±{r:?} must be positive")));
            }
        }
        if let Some(r) = positive.iter().find(|r| !rs.contains(r)) {
            return Err(Error::Violation(format!("{r:?} is not a root")));
        }
        let simple = indecomposable(&positive);
        for r in &positive {
            let c = solve_rational(&simple, r).ok_or_else(|| Error::Violation("simple roots are dependent or do not span".into()))?;
            if c.iter().any(|&(n, d)| n % d != 0 || n / d < 0) {
                return Err(Error::Violation(format!("{r:?} is not a nonnegative integer combination of simple roots")));
            }
        }
        Ok(PositiveSystem { positive, simple })
    }

    /// Lexicographically positive roots.
    pub fn standard(rs: &RootSystem) -> Result<PositiveSystem> {
        PositiveSystem::from_positive(rs, rs.roots.keys().filter(|r| lex_positive(r)).cloned().collect())
    }

    pub fn is_positive(&self, a: &[i64]) -> bool {
        self.positive.contains(a)
    }

    /// Coefficients of a root in the simple roots.
    pub fn coefficients(&self, a: &[i64]) -> Option<Vec<i64>> {
        let c = solve_rational(&self.simple, a)?;
        c.iter().all(|&(n, d)| n % d == 0).then(|| c.iter().map(|&(n, d)| (n / d) as i64).collect())
    }
}

/// Elements of a set that are not the sum of two of its elements.
pub fn indecomposable(set: &BTreeSet<Root>) -> Vec<Root> {
    set.iter().filter(|a| !set.iter().any(|b| set.contains(&add(a, &neg(b))))).cloned().collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn reduce((n, d): (i128, i128)) -> (i128, i128) {
    let g = gcd(n, d).max(1) * d.signum();
    (n / g, d / g)
}

/// Unique rational solution of Σ c_i cols_i = target, if the columns are
/// independent and the target lies in their span.
fn solve_rational(cols: &[Root], target: &[i64]) -> Option<Vec<(i128, i128)>> {
    let n = target.len();
    let k = cols.len();
    let mut a: Vec<Vec<(i128, i128)>> = (0..n).map(|r| (0..=k).map(|c| (if c < k { cols[c][r] } else { target[r] } as i128, 1)).collect()).collect();
    let sub = |x: (i128, i128), y: (i128, i128)| reduce((x.0 * y.1 - y.0 * x.1, x.1 * y.1));
    let mul = |x: (i128, i128), y: (i128, i128)| reduce((x.0 * y.0, x.1 * y.1));
    let div = |x: (i128, i128), y: (i128, i128)| reduce((x.0 * y.1, x.1 * y.0));
    let mut row = 0;
    for col in 0..k {
        let piv = (row..n).find(|&r| a[r][col].0 != 0)?;
        a.swap(row, piv);
        let p = a[row][col];
        for c in col..=k {
            a[row][c] = div(a[row][c], p);
        }
        for r in 0..n {
            if r != row && a[r][col].0 != 0 {
                let m = a[r][col];
                for c in col..=k {
                    a[r][c] = sub(a[r][c], mul(m, a[row][c]));
                }
            }
        }
        row += 1;
    }
    if (row..n).any(|r| a[r][k].0 != 0) {
        return None;
    }
    Some((0..k).map(|r| a[r][k]).collect())
}

/// Reflection of a positive system at a simple root δ. Odd δ with 2δ not a
/// root swaps the line; otherwise the even reflection r_δ or r_{2δ} is
/// applied and checked to swap exactly δ*.
pub fn odd_reflection(rs: &RootSystem, ps: &PositiveSystem, d: &[i64]) -> Result<PositiveSystem> {
    if !ps.simple.iter().any(|s| s == d) {
        return Err(Error::Precondition(format!("{d:?} is not a simple root")));
    }
    let star = rs.star(d);
    let mut expected: BTreeSet<Root> = ps.positive.iter().filter(|r| !star.contains(r)).cloned().collect();
    expected.extend(star.iter().map(|r| neg(r)));
    if rs.parity(d) == Some(0) || star.len() == 2 {
        let gamma = star.last().unwrap();
        let gg = rs.inner(gamma, gamma);
        if gg == 0 {
            return Err(Error::Violation(format!("even root {gamma:?} is isotropic")));
        }
        let mut reflected = BTreeSet::new();
        for b in &ps.positive {
            let num = 2 * rs.inner(b, gamma);
            if num % gg != 0 {
                return Err(Error::Violation(format!("non-integral pairing of {b:?} with {gamma:?}")));
            }
            reflected.insert(add(b, &neg(&gamma.iter().map(|x| x * (num / gg)).collect::<Root>())));
        }
        if reflected != expected {
            return Err(Error::Violation(format!("the reflection at {gamma:?} does not swap exactly δ*")));
        }
    }
    PositiveSystem::from_positive(rs, expected)
}

/// Which half of the Levi roots the sequence starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LeviSide {
    Negative,
    Positive,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiUSequence {
    pub side: LeviSide,
    /// δ_i* in order.
    pub stars: Vec<Vec<Root>>,
    /// The system in which δ_i is simple, before reflecting at it.
    pub systems: Vec<PositiveSystem>,
    pub closed: bool,
    /// Φ_s⁺ + Ψ_i ⊆ Ψ_i on roots, for every i.
    pub normalized: bool,
    pub covers_u: bool,
}

impl PhiUSequence {
    pub fn holds(&self) -> bool {
        self.closed && self.normalized && self.covers_u
    }
}

/// Orders the lines of Φ_u by successive reflections at the
/// lexicographically lowest simple root lying in Φ_u.
pub fn enumerate_phi_u(rs: &RootSystem, phi_s_plus: &BTreeSet<Root>, phi_u: &BTreeSet<Root>, side: LeviSide) -> Result<PhiUSequence> {
    let levi: BTreeSet<Root> = match side {
        LeviSide::Positive => phi_s_plus.clone(),
        LeviSide::Negative => phi_s_plus.iter().map(|r| neg(r)).collect(),
    };
    let mut current = PositiveSystem::from_positive(rs, levi.union(phi_u).cloned().collect())?;
    let mut stars = Vec::new();
    let mut systems = Vec::new();
    while current.positive.iter().any(|r| phi_u.contains(r)) {
        let d = current
            .simple
            .iter()
            .filter(|r| phi_u.contains(*r) && rs.is_primitive(r))
            .min()
            .cloned()
            .ok_or_else(|| Error::Violation("no simple root of the current system lies in Φ_u".into()))?;
        let next = odd_reflection(rs, &current, &d)?;
        stars.push(rs.star(&d));
        systems.push(std::mem::replace(&mut current, next));
    }
    let mut closed = true;
    let mut normalized = true;
    let mut psi: BTreeSet<Root> = BTreeSet::new();
    for s in &stars {
        psi.extend(s.iter().map(|r| neg(r)));
        for a in &psi {
            for b in &psi {
                let c = add(a, b);
                if rs.contains(&c) && !psi.contains(&c) {
                    closed = false;
                }
            }
            for b in phi_s_plus {
                let c = add(a, b);
                if rs.contains(&c) && !psi.contains(&c) {
                    normalized = false;
                }
            }
        }
    }
    let covered: usize = stars.iter().map(|s| s.len()).sum();
    let covers_u = covered == phi_u.len() && psi == phi_u.iter().map(|r| neg(r)).collect();
    Ok(PhiUSequence { side, stars, systems, closed, normalized, covers_u })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldCtx;
    use crate::superlie::{gl, osp, osp12};

    fn set(v: &[&[i64]]) -> BTreeSet<Root> {
        v.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn osp12_line_is_type_three() {
        let f = FieldCtx::new(3, 1).unwrap();
        let rs = RootSystem::from_algebra(&osp12(&f).unwrap()).unwrap();
        assert_eq!(rs.lines, vec![RootLine { delta: vec![1], kind: LineType::OddWithDouble }]);
        let ps = PositiveSystem::standard(&rs).unwrap();
        assert_eq!(ps.simple, vec![vec![1]]);
        let r = odd_reflection(&rs, &ps, &[1]).unwrap();
        assert_eq!(r.simple, vec![vec![-1]]);
        assert_eq!(r.positive, set(&[&[-1], &[-2]]));
    }

    #[test]
    fn gl11_reflection() {
        let f = FieldCtx::new(3, 1).unwrap();
        let rs = RootSystem::from_algebra(&gl(&f, 1, 1).unwrap()).unwrap();
        assert_eq!(rs.lines.len(), 1);
        assert_eq!(rs.lines[0].kind, LineType::Odd);
        let ps = PositiveSystem::standard(&rs).unwrap();
        assert_eq!(ps.simple, vec![vec![1, -1]]);
        let r = odd_reflection(&rs, &ps, &[1, -1]).unwrap();
        assert_eq!(r.simple, vec![vec![-1, 1]]);
    }

    #[test]
    fn gl21_odd_reflection_changes_one_line() {
        let f = FieldCtx::new(3, 1).unwrap();
        let rs = RootSystem::from_algebra(&gl(&f, 2, 1).unwrap()).unwrap();
        let ps = PositiveSystem::standard(&rs).unwrap();
        let odd: Vec<Root> = ps.simple.iter().filter(|s| rs.parity(s) == Some(1)).cloned().collect();
        assert_eq!(odd, vec![vec![0, 1, -1]]);
        let r = odd_reflection(&rs, &ps, &odd[0]).unwrap();
        assert_eq!(ps.positive.difference(&r.positive).count(), 1);
        assert_eq!(r.positive.difference(&ps.positive).cloned().collect::<Vec<_>>(), vec![vec![0, -1, 1]]);
        assert_eq!(odd_reflection(&rs, &r, &[0, -1, 1]).unwrap(), ps);
    }

    #[test]
    fn non_simple_reflection_rejected() {
        let f = FieldCtx::new(3, 1).unwrap();
        let rs = RootSystem::from_algebra(&gl(&f, 2, 1).unwrap()).unwrap();
        let ps = PositiveSystem::standard(&rs).unwrap();
        assert!(matches!(odd_reflection(&rs, &ps, &[1, 0, -1]), Err(Error::Precondition(_))));
    }

    #[test]
    fn bad_positive_sets_rejected() {
        let f = FieldCtx::new(3, 1).unwrap();
        let rs = RootSystem::from_algebra(&gl(&f, 2, 1).unwrap()).unwrap();
        // ε1−ε2 and ε2−δ positive but their sum negative
        let bad = set(&[&[1, -1, 0], &[0, 1, -1], &[-1, 0, 1]]);
        assert!(PositiveSystem::from_positive(&rs, bad).is_err());
    }

    #[test]
    fn osp14_lines() {
        let f = FieldCtx::new(3, 1).unwrap();
        let rs = RootSystem::from_algebra(&osp(&f, 1, 4).unwrap()).unwrap();
        let kinds: Vec<LineType> = rs.lines.iter().map(|l| l.kind).collect();
        assert_eq!(kinds.iter().filter(|&&k| k == LineType::OddWithDouble).count(), 2);
        assert_eq!(kinds.iter().filter(|&&k| k == LineType::Even).count(), 2);
        assert_eq!(kinds.len(), 4);
    }

    #[test]
    fn phi_u_empty_when_levi_is_everything() {
        let f = FieldCtx::new(3, 1).unwrap();
        let rs = RootSystem::from_algebra(&gl(&f, 2, 1).unwrap()).unwrap();
        let ps = PositiveSystem::standard(&rs).unwrap();
        let seq = enumerate_phi_u(&rs, &ps.positive, &BTreeSet::new(), LeviSide::Negative).unwrap();
        assert!(seq.stars.is_empty());
        assert!(seq.holds());
    }

    #[test]
    fn osp12_phi_u_one_star() {
        let f = FieldCtx::new(3, 1).unwrap();
        let rs = RootSystem::from_algebra(&osp12(&f).unwrap()).unwrap();
        for side in [LeviSide::Negative, LeviSide::Positive] {
            let seq = enumerate_phi_u(&rs, &BTreeSet::new(), &set(&[&[1], &[2]]), side).unwrap();
            assert_eq!(seq.stars, vec![vec![vec![1], vec![2]]]);
            assert!(seq.holds());
        }
    }

    /// Every positive system reachable from the standard one by reflections.
    fn reachable(rs: &RootSystem) -> Vec<PositiveSystem> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue = vec![PositiveSystem::standard(rs).unwrap()];
        while let Some(ps) = queue.pop() {
            if !seen.insert(ps.positive.clone()) {
                continue;
            }
            for s in &ps.simple {
                queue.push(odd_reflection(rs, &ps, s).unwrap());
            }
            out.push(ps);
        }
        out
    }

    /// (Φ_s⁺, Φ_u) for every subset of the simple roots.
    fn parabolics(ps: &PositiveSystem) -> Vec<(BTreeSet<Root>, BTreeSet<Root>)> {
        let k = ps.simple.len();
        (0..1u32 << k)
            .map(|mask| {
                let levi: BTreeSet<Root> = ps
                    .positive
                    .iter()
                    .filter(|r| ps.coefficients(r).unwrap().iter().enumerate().all(|(i, &c)| c == 0 || mask >> i & 1 == 1))
                    .cloned()
                    .collect();
                let u = ps.positive.difference(&levi).cloned().collect();
                (levi, u)
            })
            .collect()
    }

    #[test]
    fn gl21_levi_gl11_two_lines() {
        let f = FieldCtx::new(3, 1).unwrap();
        let rs = RootSystem::from_algebra(&gl(&f, 2, 1).unwrap()).unwrap();
        let seq = enumerate_phi_u(&rs, &set(&[&[0, 1, -1]]), &set(&[&[1, -1, 0], &[1, 0, -1]]), LeviSide::Positive).unwrap();
        assert_eq!(seq.stars, vec![vec![vec![1, -1, 0]], vec![vec![1, 0, -1]]]);
        assert!(seq.holds());
    }

    #[test]
    fn phi_u_sweep_over_all_parabolics() {
        let f = FieldCtx::new(3, 1).unwrap();
        let mut minus_start_failures = 0;
        for g in [gl(&f, 2, 1).unwrap(), gl(&f, 2, 2).unwrap(), osp(&f, 1, 4).unwrap(), osp(&f, 3, 2).unwrap()] {
            let rs = RootSystem::from_algebra(&g).unwrap();
            for ps in reachable(&rs) {
                assert!(odd_reflection(&rs, &odd_reflection(&rs, &ps, &ps.simple[0]).unwrap(), &neg(&ps.simple[0])).unwrap() == ps);
                for (levi, u) in parabolics(&ps) {
                    let seq = enumerate_phi_u(&rs, &levi, &u, LeviSide::Positive).unwrap();
                    assert!(seq.holds(), "{levi:?} {u:?}");
                    // starting from Φ_s⁻ ∪ Φ_u normalizes by Φ_s⁻ instead
                    let minus: BTreeSet<Root> = levi.iter().map(|r| neg(r)).collect();
                    let alt = enumerate_phi_u(&rs, &levi, &u, LeviSide::Negative).unwrap();
                    if !alt.normalized {
                        minus_start_failures += 1;
                    }
                    assert!(enumerate_phi_u(&rs, &minus, &u, LeviSide::Positive).unwrap().holds());
                }
            }
        }
        assert!(minus_start_failures > 0);
    }
}
