use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gps::{GradedSeries, VarSet};
use crate::ring::CoeffRing;

/// An ordered basis of one graded piece of a truncated ring.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedPiece<R: CoeffRing> {
    degree: i64,
    basis: Vec<GradedSeries<R>>,
}

impl<R: CoeffRing> GradedPiece<R> {
    pub fn new(degree: i64, basis: Vec<GradedSeries<R>>) -> Self {
        GradedPiece { degree, basis }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GradedSeries<R>] {
        &self.basis
    }
}

/// A graded ring given by generators and relations, truncated at weighted
/// degree `order`, with explicit bases of the requested graded pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct RingPresentation<R: CoeffRing> {
    name: String,
    ring: R,
    generators: Arc<VarSet>,
    relations: Vec<GradedSeries<R>>,
    order: u32,
    pieces: Vec<GradedPiece<R>>,
}

/// Basis of the degree-`i` piece of `R[[x]]_gr` truncated at `order`:
/// monomials of degree `p <= order` times a basis of `R` in codegree `p - i`.
pub fn free_piece<R: CoeffRing>(ring: &R, generators: &Arc<VarSet>, order: u32, degree: i64) -> Result<GradedPiece<R>> {
    let mut basis = Vec::new();
    for p in 0..=order {
        let c = p as i64 - degree;
        let monos = generators.monomials_of_degree(p);
        if monos.is_empty() {
            continue;
        }
        let coeffs = ring.graded_basis(c).ok_or(Error::InsufficientTable {
            required: c.max(0) as usize,
            available: ring.depth().unwrap_or(0).max(0) as usize,
        })?;
        for m in &monos {
            for b in &coeffs {
                basis.push(GradedSeries::from_terms(
                    ring.clone(),
                    generators.clone(),
                    order,
                    [(m.exps().to_vec(), b.clone())],
                ));
            }
        }
    }
    Ok(GradedPiece::new(degree, basis))
}

impl<R: CoeffRing> RingPresentation<R> {
    pub fn new(
        name: impl Into<String>,
        ring: R,
        generators: Arc<VarSet>,
        relations: Vec<GradedSeries<R>>,
        order: u32,
        pieces: Vec<GradedPiece<R>>,
    ) -> Result<Self> {
        for r in &relations {
            if r.vars() != &generators || r.order() != order || r.ring() != &ring {
                return Err(Error::ShapeMismatch("relation is not over the generators".into()));
            }
            if r.degree() == crate::gps::Degree::Mixed {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(RingPresentation {
            name: name.into(),
            ring,
            generators,
            relations,
            order,
            pieces,
        })
    }

    /// The free graded power series ring on `generators`.
    pub fn free(name: impl Into<String>, ring: R, generators: Arc<VarSet>, order: u32, degrees: &[i64]) -> Result<Self> {
        let pieces = degrees
            .iter()
            .map(|&i| free_piece(&ring, &generators, order, i))
            .collect::<Result<_>>()?;
        Self::new(name, ring, generators, Vec::new(), order, pieces)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn generators(&self) -> &Arc<VarSet> {
        &self.generators
    }

    pub fn relations(&self) -> &[GradedSeries<R>] {
        &self.relations
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn pieces(&self) -> &[GradedPiece<R>] {
        &self.pieces
    }

    pub fn piece(&self, degree: i64) -> Option<&GradedPiece<R>> {
        self.pieces.iter().find(|p| p.degree == degree)
    }

    pub fn rank(&self, degree: i64) -> Option<usize> {
        self.piece(degree).map(GradedPiece::rank)
    }

    /// `(degree, rank)` for every stored piece.
    pub fn ranks(&self) -> Vec<(i64, usize)> {
        self.pieces.iter().map(|p| (p.degree, p.rank())).collect()
    }

    /// The image under the truncation map to a smaller order.
    pub fn truncate(&self, order: u32) -> Result<Self> {
        let relations = self
            .relations
            .iter()
            .map(|r| r.truncate(order))
            .collect::<Result<Vec<_>>>()?;
        let mut pieces = Vec::new();
        for p in &self.pieces {
            let mut basis = Vec::new();
            for b in &p.basis {
                let t = b.truncate(order)?;
                if !t.is_zero() {
                    basis.push(t);
                }
            }
            pieces.push(GradedPiece::new(p.degree, basis));
        }
        Ok(RingPresentation {
            name: self.name.clone(),
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            relations,
            order,
            pieces,
        })
    }

    /// Replaces the name, keeping everything else.
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn to_json(&self) -> Value {
        let g = &self.generators;
        json!({
            "name": self.name,
            "coefficients": self.ring.describe(),
            "order": self.order,
            "generators": (0..g.len())
                .map(|k| json!({"name": g.name(k), "degree": g.weight(k)}))
                .collect::<Vec<_>>(),
            "relations": self.relations.iter()
                .map(|r| json!({"text": r.to_string(), "terms": r.terms_json()}))
                .collect::<Vec<_>>(),
            "graded_pieces": self.pieces.iter()
                .map(|p| json!({
                    "degree": p.degree,
                    "rank": p.rank(),
                    "basis": p.basis.iter()
                        .map(|b| json!({"text": b.to_string(), "terms": b.terms_json()}))
                        .collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(ring: R, v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::InvalidInput(format!("presentation JSON: {what}"));
        let name = v["name"].as_str().ok_or_else(|| bad("name"))?;
        let order = v["order"].as_u64().ok_or_else(|| bad("order"))? as u32;
        let mut names = Vec::new();
        let mut weights = Vec::new();
        for g in v["generators"].as_array().ok_or_else(|| bad("generators"))? {
            names.push(g["name"].as_str().ok_or_else(|| bad("generator name"))?.to_string());
            weights.push(g["degree"].as_u64().ok_or_else(|| bad("generator degree"))? as u32);
        }
        let generators = VarSet::new(names, weights)?;
        let series = |x: &Value| GradedSeries::from_terms_json(ring.clone(), generators.clone(), order, &x["terms"]);
        let relations = v["relations"]
            .as_array()
            .ok_or_else(|| bad("relations"))?
            .iter()
            .map(series)
            .collect::<Result<Vec<_>>>()?;
        let mut pieces = Vec::new();
        for p in v["graded_pieces"].as_array().ok_or_else(|| bad("graded_pieces"))? {
            let degree = p["degree"].as_i64().ok_or_else(|| bad("degree"))?;
            let basis = p["basis"]
                .as_array()
                .ok_or_else(|| bad("basis"))?
                .iter()
                .map(series)
                .collect::<Result<Vec<_>>>()?;
            if p["rank"].as_u64() != Some(basis.len() as u64) {
                return Err(bad("rank disagrees with basis"));
            }
            pieces.push(GradedPiece::new(degree, basis));
        }
        Self::new(name, ring, generators, relations, order, pieces)
    }
}

impl<R: CoeffRing> fmt::Display for RingPresentation<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.generators;
        let gens: Vec<String> = (0..g.len())
            .map(|k| format!("{} (degree {})", g.name(k), g.weight(k)))
            .collect();
        writeln!(f, "{} over {}, truncated at degree {}", self.name, self.ring.describe(), self.order)?;
        writeln!(f, "generators: {}", if gens.is_empty() { "none".into() } else { gens.join(", ") })?;
        if self.relations.is_empty() {
            writeln!(f, "relations: none")?;
        } else {
            writeln!(f, "relations:")?;
            for r in &self.relations {
                writeln!(f, "  {r} = 0")?;
            }
        }
        for p in &self.pieces {
            writeln!(f, "degree {:>3}: rank {}", p.degree, p.rank())?;
            for b in &p.basis {
                writeln!(f, "    {b}")?;
            }
        }
        Ok(())
    }
}
