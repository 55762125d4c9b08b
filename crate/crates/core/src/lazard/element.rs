use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::Value;

use super::table::LazardBasisTable;
use crate::error::{Error, Result};
use crate::ring::{int_from_json, int_to_json, CoeffRing};

/// An element of the Lazard ring truncated at the table depth, stored as
/// canonical coordinates per codegree. Components past the depth are never
/// represented; the `truncated` flag records that some were dropped.
///
/// Equality compares the table and the coordinates, not the flag.
#[derive(Debug, Clone)]
pub struct LazardElement {
    table_id: u64,
    max_codegree: usize,
    parts: BTreeMap<usize, Vec<BigInt>>,
    truncated: bool,
}

impl PartialEq for LazardElement {
    fn eq(&self, other: &Self) -> bool {
        self.table_id == other.table_id && self.parts == other.parts
    }
}

impl Eq for LazardElement {}

impl LazardElement {
    pub(crate) fn zero(table_id: u64, max_codegree: usize) -> Self {
        LazardElement {
            table_id,
            max_codegree,
            parts: BTreeMap::new(),
            truncated: false,
        }
    }

    pub(crate) fn from_parts(
        table_id: u64,
        max_codegree: usize,
        mut parts: BTreeMap<usize, Vec<BigInt>>,
        truncated: bool,
    ) -> Self {
        parts.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        LazardElement {
            table_id,
            max_codegree,
            parts,
            truncated,
        }
    }

    pub fn table_id(&self) -> u64 {
        self.table_id
    }

    pub fn max_codegree(&self) -> usize {
        self.max_codegree
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Nonzero homogeneous components keyed by codegree.
    pub fn parts(&self) -> &BTreeMap<usize, Vec<BigInt>> {
        &self.parts
    }

    pub fn part(&self, codegree: usize) -> Option<&[BigInt]> {
        self.parts.get(&codegree).map(Vec::as_slice)
    }

    pub fn codegrees(&self) -> Vec<usize> {
        self.parts.keys().copied().collect()
    }

    pub fn homogeneous_part(&self, codegree: usize) -> LazardElement {
        let parts = self
            .parts
            .get(&codegree)
            .map(|v| BTreeMap::from([(codegree, v.clone())]))
            .unwrap_or_default();
        LazardElement::from_parts(self.table_id, self.max_codegree, parts, false)
    }

    pub fn add(&self, other: &LazardElement) -> Result<LazardElement> {
        if self.table_id != other.table_id {
            return Err(Error::MismatchedTable);
        }
        let mut parts = self.parts.clone();
        for (d, v) in &other.parts {
            match parts.get_mut(d) {
                Some(acc) => {
                    for (a, b) in acc.iter_mut().zip(v) {
                        *a += b;
                    }
                }
                None => {
                    parts.insert(*d, v.clone());
                }
            }
        }
        Ok(LazardElement::from_parts(
            self.table_id,
            self.max_codegree,
            parts,
            self.truncated || other.truncated,
        ))
    }

    pub fn neg(&self) -> LazardElement {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &LazardElement) -> Result<LazardElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> LazardElement {
        let parts = self
            .parts
            .iter()
            .map(|(d, v)| (*d, v.iter().map(|x| x * c).collect()))
            .collect();
        LazardElement::from_parts(self.table_id, self.max_codegree, parts, self.truncated)
    }
}

/// The truncated Lazard ring as a coefficient ring for series.
#[derive(Debug, Clone)]
pub struct LazardRing {
    table: Arc<LazardBasisTable>,
}

impl LazardRing {
    pub fn new(table: Arc<LazardBasisTable>) -> Self {
        LazardRing { table }
    }

    pub fn table(&self) -> &Arc<LazardBasisTable> {
        &self.table
    }
}

impl PartialEq for LazardRing {
    fn eq(&self, other: &Self) -> bool {
        self.table.fingerprint() == other.table.fingerprint()
    }
}

impl CoeffRing for LazardRing {
    type Elem = LazardElement;

    fn zero(&self) -> LazardElement {
        self.table.zero()
    }
    fn one(&self) -> LazardElement {
        self.table.one()
    }
    fn from_int(&self, n: &BigInt) -> LazardElement {
        self.table.from_int(n)
    }
    fn is_zero(&self, x: &LazardElement) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &LazardElement, y: &LazardElement) -> LazardElement {
        x.add(y).expect("elements of one Lazard ring")
    }
    fn neg(&self, x: &LazardElement) -> LazardElement {
        x.neg()
    }
    fn mul(&self, x: &LazardElement, y: &LazardElement) -> LazardElement {
        self.table.mul(x, y).expect("elements of one Lazard ring")
    }
    fn as_integer(&self, x: &LazardElement) -> Option<BigInt> {
        match x.parts.len() {
            0 => Some(BigInt::zero()),
            1 => x.part(0).map(|v| v[0].clone()),
            _ => None,
        }
    }
    fn codegrees(&self, x: &LazardElement) -> Vec<i64> {
        x.parts.keys().map(|&d| d as i64).collect()
    }
    fn homogeneous_part(&self, x: &LazardElement, codegree: i64) -> LazardElement {
        if codegree < 0 {
            return self.zero();
        }
        x.homogeneous_part(codegree as usize)
    }
    fn graded_basis(&self, codegree: i64) -> Option<Vec<LazardElement>> {
        if codegree < 0 {
            return Some(Vec::new());
        }
        let d = codegree as usize;
        if d > self.table.max_codegree() {
            return None;
        }
        Some(
            (0..self.table.rank(d))
                .map(|k| self.table.basis_element(d, k))
                .collect(),
        )
    }
    fn coordinates(&self, x: &LazardElement, codegree: i64) -> Vec<BigInt> {
        if codegree < 0 || codegree as usize > self.table.max_codegree() {
            return Vec::new();
        }
        let d = codegree as usize;
        x.part(d)
            .map(<[BigInt]>::to_vec)
            .unwrap_or_else(|| vec![BigInt::zero(); self.table.rank(d)])
    }
    fn is_truncated(&self, x: &LazardElement) -> bool {
        x.is_truncated()
    }
    fn depth(&self) -> Option<i64> {
        Some(self.table.max_codegree() as i64)
    }
    fn describe(&self) -> String {
        "L".into()
    }
    fn format(&self, x: &LazardElement) -> String {
        self.table.format(x)
    }
    fn encode(&self, x: &LazardElement) -> Value {
        Value::Object(
            x.parts
                .iter()
                .map(|(d, v)| (d.to_string(), Value::Array(v.iter().map(int_to_json).collect())))
                .collect(),
        )
    }
    fn decode(&self, v: &Value) -> Result<LazardElement> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidInput("expected an object of codegree parts".into()))?;
        let mut parts = BTreeMap::new();
        for (d, coords) in obj {
            let d: usize = d
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad codegree {d}")))?;
            let coords = coords
                .as_array()
                .ok_or_else(|| Error::InvalidInput("expected coordinate array".into()))?
                .iter()
                .map(int_from_json)
                .collect::<Result<Vec<_>>>()?;
            if d > self.table.max_codegree() || coords.len() != self.table.rank(d) {
                return Err(Error::InvalidInput(format!(
                    "coordinates do not fit codegree {d} of this table"
                )));
            }
            parts.insert(d, coords);
        }
        Ok(LazardElement::from_parts(
            self.table.fingerprint(),
            self.table.max_codegree(),
            parts,
            false,
        ))
    }
}
