//! Naive oracles, independent of the library's pruned enumeration, interned
//! sum tables and streaming filter: permutations are generated recursively,
//! validity and multiplicities are recomputed from raw group arithmetic, and
//! acyclicity is decided by pairwise multiplicity-map comparison.

use std::collections::BTreeMap;

use acymatch::group::GroupElement;
use acymatch::matching::Matching;
use acymatch::pair::SubsetPair;

fn all_perms(n: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, cur: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                cur.push(j as u32);
                rec(n, cur, used, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn valid_by_arithmetic(pair: &SubsetPair, perm: &[u32]) -> bool {
    let spec = pair.spec();
    perm.iter().enumerate().all(|(i, &j)| {
        let sum = spec
            .add(&pair.a()[i], &pair.b()[j as usize])
            .expect("pair elements share the spec rank");
        pair.a().binary_search(&sum).is_err()
    })
}

/// Enumerate-all-permutations-then-filter, with validity recomputed from
/// group arithmetic instead of the pair's forbidden mask.
pub fn naive_matchings(pair: &SubsetPair) -> Vec<Matching> {
    all_perms(pair.n())
        .into_iter()
        .filter(|p| valid_by_arithmetic(pair, p))
        .map(Matching::from_perm)
        .collect()
}

/// Multiplicity map recomputed from group arithmetic.
pub fn naive_multiplicity(pair: &SubsetPair, m: &Matching) -> BTreeMap<GroupElement, u32> {
    let spec = pair.spec();
    let mut out = BTreeMap::new();
    for (i, &j) in m.perm().iter().enumerate() {
        let sum = spec
            .add(&pair.a()[i], &pair.b()[j as usize])
            .expect("pair elements share the spec rank");
        *out.entry(sum).or_insert(0) += 1;
    }
    out
}

fn naive_sequence(pair: &SubsetPair, m: &Matching) -> Vec<u32> {
    let mut terms: Vec<u32> = naive_multiplicity(pair, m).into_values().collect();
    terms.sort_unstable_by(|a, b| b.cmp(a));
    terms
}

/// Survivors as the lexicographic-maximum sequence class over a given
/// matching set.
pub fn naive_survivors(pair: &SubsetPair, matchings: &[Matching]) -> Vec<Matching> {
    let best = matchings
        .iter()
        .map(|m| naive_sequence(pair, m))
        .max()
        .unwrap_or_default();
    matchings
        .iter()
        .filter(|m| naive_sequence(pair, m) == best)
        .cloned()
        .collect()
}

/// Acyclic matchings by pairwise multiplicity-map comparison.
pub fn naive_acyclic_set(pair: &SubsetPair, matchings: &[Matching]) -> Vec<Matching> {
    let maps: Vec<_> = matchings
        .iter()
        .map(|m| naive_multiplicity(pair, m))
        .collect();
    matchings
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            maps.iter()
                .enumerate()
                .all(|(k, other)| k == *i || *other != maps[*i])
        })
        .map(|(_, m)| m.clone())
        .collect()
}
