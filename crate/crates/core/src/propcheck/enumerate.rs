//! Canonical enumeration of relations and mappings over small universes.

use crate::error::{Error, Result};
use crate::mapping::FiniteMapping;
use crate::relation::{BinaryRelation, Universe};

pub const MAX_SIZE: usize = 5;

fn check_size(size: usize) -> Result<()> {
    if (1..=MAX_SIZE).contains(&size) {
        Ok(())
    } else {
        Err(Error::SizeOutOfRange {
            size,
            max: MAX_SIZE,
        })
    }
}

/// Domain universe `u0 .. u{n-1}`.
pub fn canonical_domain(n: usize) -> Result<Universe> {
    check_size(n)?;
    Universe::canonical("u", n)
}

/// Codomain universe `v0 .. v{m-1}`.
pub fn canonical_codomain(m: usize) -> Result<Universe> {
    check_size(m)?;
    Universe::canonical("v", m)
}

pub fn relation_count(n: usize) -> u64 {
    1 << (n * n)
}

pub fn mapping_count(n: usize, m: usize) -> u64 {
    (m as u64).pow(n as u32)
}

/// The mapping whose targets are the base-`m` digits of `index`, element 0
/// being the least significant digit.
pub fn mapping_from_index(domain: &Universe, codomain: &Universe, index: u64) -> FiniteMapping {
    let m = codomain.len() as u64;
    let mut rest = index;
    let targets = (0..domain.len())
        .map(|_| {
            let t = rest % m;
            rest /= m;
            t as usize
        })
        .collect();
    FiniteMapping::new(domain, codomain, targets).expect("digits are valid targets")
}

pub fn mapping_index(f: &FiniteMapping) -> u64 {
    let m = f.codomain().len() as u64;
    f.targets()
        .iter()
        .rev()
        .fold(0, |acc, &t| acc * m + t as u64)
}

/// All `2^(n²)` relations on `universe`, ordered by their row-major bit
/// pattern read as an integer.
pub fn relations_on(universe: &Universe) -> Result<impl Iterator<Item = BinaryRelation> + '_> {
    check_size(universe.len())?;
    Ok((0..relation_count(universe.len()))
        .map(move |bits| BinaryRelation::from_bits(universe, bits)))
}

/// All relations on the canonical `n`-element domain.
pub fn enumerate_relations(n: usize) -> Result<impl Iterator<Item = BinaryRelation>> {
    let u = canonical_domain(n)?;
    Ok((0..relation_count(n)).map(move |bits| BinaryRelation::from_bits(&u, bits)))
}

/// All `m^n` mappings between the canonical universes, in base-`m` order.
pub fn enumerate_mappings(n: usize, m: usize) -> Result<impl Iterator<Item = FiniteMapping>> {
    let u = canonical_domain(n)?;
    let v = canonical_codomain(m)?;
    Ok((0..mapping_count(n, m)).map(move |i| mapping_from_index(&u, &v, i)))
}
