//! Arithmetic in finitely generated abelian groups `Z/m_1 × … × Z/m_k`.
//!
//! A modulus of `0` denotes an infinite cyclic factor, so the same data model
//! covers `Z/nZ`, `Z^n` and mixed products. Elements are kept in canonical
//! form: coordinates of finite factors reduced into `0..m_i`, coordinates of
//! infinite factors arbitrary. The canonical ordering of elements is
//! lexicographic on coordinate lists, which keeps every derived set listing
//! deterministic.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group spec must have at least one factor")]
    EmptySpec,
    #[error("modulus 1 is not a valid cyclic factor")]
    UnitModulus,
    #[error("invalid modulus {0}: must be 0 (infinite) or >= 2")]
    BadModulus(i64),
    #[error("cannot parse group spec from '{0}'")]
    ParseSpec(String),
    #[error("cannot parse element from '{0}'")]
    ParseElement(String),
    #[error("element has {got} coordinates but the group has rank {rank}")]
    RankMismatch { got: usize, rank: usize },
}

/// A finitely generated abelian group given as a product of cyclic factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    moduli: Vec<i64>,
}

/// An element of a [`GroupSpec`], one coordinate per cyclic factor.
///
/// Ordering is lexicographic on the coordinate list; for canonical elements
/// this is the canonical element order used everywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    coords: Vec<i64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }
}

impl GroupSpec {
    /// Builds a spec from cyclic factor moduli. Every modulus must be 0
    /// (infinite factor) or at least 2; modulus 1 factors are rejected rather
    /// than silently collapsed.
    pub fn new(moduli: Vec<i64>) -> Result<Self, GroupError> {
        if moduli.is_empty() {
            return Err(GroupError::EmptySpec);
        }
        for &m in &moduli {
            if m == 1 {
                return Err(GroupError::UnitModulus);
            }
            if m < 0 {
                return Err(GroupError::BadModulus(m));
            }
        }
        Ok(GroupSpec { moduli })
    }

    /// The single cyclic group `Z/nZ` (or `Z` when `n == 0`).
    pub fn cyclic(n: i64) -> Result<Self, GroupError> {
        Self::new(vec![n])
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_finite(&self) -> bool {
        self.moduli.iter().all(|&m| m != 0)
    }

    /// Group order, or `None` when the group is infinite or the order does
    /// not fit in `u64` (both are out of enumeration range).
    pub fn order(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for &m in &self.moduli {
            if m == 0 {
                return None;
            }
            acc = acc.checked_mul(m as u64)?;
        }
        Some(acc)
    }

    /// The neutral element.
    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.moduli.len()],
        }
    }

    /// Canonicalizes raw coordinates into an element of this group.
    pub fn element(&self, coords: Vec<i64>) -> Result<GroupElement, GroupError> {
        if coords.len() != self.moduli.len() {
            return Err(GroupError::RankMismatch {
                got: coords.len(),
                rank: self.moduli.len(),
            });
        }
        let coords = coords
            .into_iter()
            .zip(&self.moduli)
            .map(|(c, &m)| if m == 0 { c } else { c.rem_euclid(m) })
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn is_canonical(&self, x: &GroupElement) -> bool {
        x.coords.len() == self.moduli.len()
            && x.coords
                .iter()
                .zip(&self.moduli)
                .all(|(&c, &m)| m == 0 || (0 <= c && c < m))
    }

    /// Coordinatewise sum, reduced to canonical form.
    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_rank(x)?;
        self.check_rank(y)?;
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .zip(&self.moduli)
            .map(|((&a, &b), &m)| if m == 0 { a + b } else { (a + b).rem_euclid(m) })
            .collect();
        Ok(GroupElement { coords })
    }

    /// Additive inverse in canonical form.
    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_rank(x)?;
        let coords = x
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| if m == 0 { -c } else { (-c).rem_euclid(m) })
            .collect();
        Ok(GroupElement { coords })
    }

    /// The pairwise sumset `{a + b : a ∈ A, b ∈ B}`, deduplicated and in
    /// canonical order.
    pub fn sumset(
        &self,
        a: &[GroupElement],
        b: &[GroupElement],
    ) -> Result<Vec<GroupElement>, GroupError> {
        let mut out = BTreeSet::new();
        for x in a {
            for y in b {
                out.insert(self.add(x, y)?);
            }
        }
        Ok(out.into_iter().collect())
    }

    /// True iff `B ∪ {0}` is closed under addition and negation, i.e. a
    /// subgroup. `B` is expected not to contain the neutral element; the
    /// empty set yields the trivial subgroup.
    pub fn is_subgroup_with_zero(&self, b: &[GroupElement]) -> Result<bool, GroupError> {
        let mut h: BTreeSet<GroupElement> = BTreeSet::new();
        h.insert(self.zero());
        for x in b {
            self.check_rank(x)?;
            h.insert(x.clone());
        }
        for x in &h {
            if !h.contains(&self.neg(x)?) {
                return Ok(false);
            }
            for y in &h {
                if !h.contains(&self.add(x, y)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn check_rank(&self, x: &GroupElement) -> Result<(), GroupError> {
        if x.coords.len() != self.moduli.len() {
            return Err(GroupError::RankMismatch {
                got: x.coords.len(),
                rank: self.moduli.len(),
            });
        }
        Ok(())
    }

    /// Element at a given mixed-radix index, for finite groups. Index order
    /// equals canonical element order (first coordinate most significant).
    pub fn element_at(&self, mut index: u64) -> Option<GroupElement> {
        self.order()?;
        let mut coords = vec![0i64; self.moduli.len()];
        for (slot, &m) in coords.iter_mut().zip(&self.moduli).rev() {
            let m = m as u64;
            *slot = (index % m) as i64;
            index /= m;
        }
        (index == 0).then_some(GroupElement { coords })
    }

    /// Mixed-radix index of a canonical element, for finite groups.
    pub fn index_of(&self, x: &GroupElement) -> Option<u64> {
        self.order()?;
        if !self.is_canonical(x) {
            return None;
        }
        let mut acc: u64 = 0;
        for (&c, &m) in x.coords.iter().zip(&self.moduli) {
            acc = acc * (m as u64) + c as u64;
        }
        Some(acc)
    }

    /// All elements of a finite group in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let order = self.order().unwrap_or(0);
        (0..order).map(|i| self.element_at(i).expect("index within order"))
    }

    /// Parses one element from comma-separated coordinates, e.g. `"7"` or
    /// `"1,3"`.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement, GroupError> {
        let coords: Vec<i64> = s
            .split(',')
            .map(|tok| tok.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| GroupError::ParseElement(s.to_string()))?;
        match self.element(coords) {
            Ok(e) => Ok(e),
            Err(GroupError::RankMismatch { .. }) => Err(GroupError::ParseElement(s.to_string())),
            Err(e) => Err(e),
        }
    }

    /// Parses an element list: elements joined by `;`, coordinates within an
    /// element joined by `,`. For rank-1 groups a bare comma-separated list
    /// like `"1,3,5,7"` is accepted as shorthand for one element per entry.
    pub fn parse_elements(&self, s: &str) -> Result<Vec<GroupElement>, GroupError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        if self.rank() == 1 && !s.contains(';') {
            return s.split(',').map(|tok| self.parse_element(tok)).collect();
        }
        s.split(';').map(|tok| self.parse_element(tok)).collect()
    }

    /// Parse-compatible text for one element (comma-joined coordinates).
    pub fn element_text(&self, x: &GroupElement) -> String {
        x.coords
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parse-compatible text for an element list (`;`-joined).
    pub fn set_text(&self, xs: &[GroupElement]) -> String {
        xs.iter()
            .map(|x| self.element_text(x))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Human-readable form: rank-1 elements print bare, higher ranks print
    /// as `(a,b)`.
    pub fn element_display(&self, x: &GroupElement) -> String {
        if self.rank() == 1 {
            x.coords[0].to_string()
        } else {
            format!("({})", self.element_text(x))
        }
    }

    /// Human-readable set form, `{a,b,c}`.
    pub fn set_display(&self, xs: &[GroupElement]) -> String {
        let inner = xs
            .iter()
            .map(|x| self.element_display(x))
            .collect::<Vec<_>>()
            .join(",");
        format!("{{{inner}}}")
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self
            .moduli
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join("x");
        f.write_str(&text)
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    /// Factors joined by `x`: `"14"` is `Z/14Z`, `"2x4"` is `Z/2 × Z/4`,
    /// `"0"` is `Z`.
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let moduli: Vec<i64> = s
            .split('x')
            .map(|tok| tok.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| GroupError::ParseSpec(s.to_string()))?;
        if moduli.is_empty() {
            return Err(GroupError::ParseSpec(s.to_string()));
        }
        GroupSpec::new(moduli)
    }
}
