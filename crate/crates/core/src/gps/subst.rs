use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{unit_sign, CoeffRing};

use super::series::{Degree, GradedSeries, VarSet};

/// A graded ring map out of a series ring: each source generator goes to a
/// series of the same degree with zero constant term.
#[derive(Debug, Clone)]
pub struct Substitution<R: CoeffRing> {
    source: Arc<VarSet>,
    images: Vec<GradedSeries<R>>,
}

impl<R: CoeffRing> Substitution<R> {
    pub fn new(source: Arc<VarSet>, images: Vec<GradedSeries<R>>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} images for {} generators",
                images.len(),
                source.len()
            )));
        }
        if let Some(first) = images.first() {
            for img in &images[1..] {
                first.check_shape(img)?;
            }
        }
        for (k, img) in images.iter().enumerate() {
            let generator = source.name(k).to_string();
            if !img.ring().is_zero(&img.constant_term()) {
                return Err(Error::NonzeroConstantTerm { generator });
            }
            let expected = source.weight(k) as i64;
            match img.degree() {
                Degree::Zero => {}
                Degree::Homogeneous(i) if i == expected => {}
                d => {
                    return Err(Error::DegreeMismatch {
                        generator,
                        expected,
                        found: d.value(),
                    })
                }
            }
        }
        Ok(Substitution { source, images })
    }

    /// The identity on a series ring.
    pub fn identity(ring: R, vars: Arc<VarSet>, order: u32) -> Self {
        let images = (0..vars.len())
            .map(|k| GradedSeries::var(ring.clone(), vars.clone(), order, k))
            .collect();
        Substitution {
            source: vars,
            images,
        }
    }

    pub fn source(&self) -> &Arc<VarSet> {
        &self.source
    }

    pub fn images(&self) -> &[GradedSeries<R>] {
        &self.images
    }

    pub fn apply(&self, x: &GradedSeries<R>) -> Result<GradedSeries<R>> {
        if *x.vars() != self.source {
            return Err(Error::ShapeMismatch("series is not over the source generators".into()));
        }
        let Some(first) = self.images.first() else {
            // No generators: only the constant survives.
            return Ok(x.clone());
        };
        if x.ring() != first.ring() {
            return Err(Error::ShapeMismatch("different coefficient rings".into()));
        }
        let order = first.order();
        if x.order() < order {
            return Err(Error::TruncationMismatch(format!(
                "source order {} is below target order {order}",
                x.order()
            )));
        }
        let ring = first.ring().clone();
        let target = first.vars().clone();
        let mut powers: Vec<Vec<GradedSeries<R>>> = self
            .images
            .iter()
            .map(|_| vec![GradedSeries::one(ring.clone(), target.clone(), order)])
            .collect();
        let mut out = GradedSeries::zero(ring.clone(), target.clone(), order);
        for (m, c) in x.terms() {
            let mut term = GradedSeries::constant(ring.clone(), target.clone(), order, c.clone());
            for (k, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e as usize {
                    let next = powers[k].last().unwrap().mul(&self.images[k])?;
                    powers[k].push(next);
                }
                term = term.mul(&powers[k][e as usize])?;
                if term.is_zero() {
                    break;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

/// The solution of a relation for one generator.
#[derive(Debug, Clone)]
pub struct Elimination<R: CoeffRing> {
    generator: usize,
    solution: GradedSeries<R>,
    substitution: Substitution<R>,
}

impl<R: CoeffRing> Elimination<R> {
    /// Index of the eliminated generator in the original variables.
    pub fn generator(&self) -> usize {
        self.generator
    }

    /// The eliminated generator as a series in the remaining ones.
    pub fn solution(&self) -> &GradedSeries<R> {
        &self.solution
    }

    /// The quotient map onto the remaining generators.
    pub fn substitution(&self) -> &Substitution<R> {
        &self.substitution
    }

    pub fn apply(&self, x: &GradedSeries<R>) -> Result<GradedSeries<R>> {
        self.substitution.apply(x)
    }
}

fn quotient_map<R: CoeffRing>(
    relation: &GradedSeries<R>,
    generator: usize,
    solution: &GradedSeries<R>,
) -> Result<Substitution<R>> {
    let rest = solution.vars().clone();
    let ring = relation.ring().clone();
    let images = (0..relation.vars().len())
        .map(|k| match k.cmp(&generator) {
            std::cmp::Ordering::Equal => solution.clone(),
            std::cmp::Ordering::Less => GradedSeries::var(ring.clone(), rest.clone(), relation.order(), k),
            std::cmp::Ordering::Greater => {
                GradedSeries::var(ring.clone(), rest.clone(), relation.order(), k - 1)
            }
        })
        .collect();
    Substitution::new(relation.vars().clone(), images)
}

/// Solves `relation = 0` for the generator at index `generator`, given a
/// homogeneous relation of the form `u * g + (higher terms)` with `u = ±1`.
pub fn eliminate<R: CoeffRing>(relation: &GradedSeries<R>, generator: usize) -> Result<Elimination<R>> {
    let vars = relation.vars().clone();
    let name = vars.name(generator).to_string();
    let weight = vars.weight(generator);
    match relation.degree() {
        Degree::Homogeneous(d) if d == weight as i64 => {}
        // The generator itself lies past the truncation.
        Degree::Zero if relation.order() < weight => {
            let solution = GradedSeries::zero(relation.ring().clone(), vars.without(&[generator]), relation.order());
            let substitution = quotient_map(relation, generator, &solution)?;
            return Ok(Elimination {
                generator,
                solution,
                substitution,
            });
        }
        _ => return Err(Error::NotHomogeneous),
    }
    let mut lin = vec![0; vars.len()];
    lin[generator] = 1;
    let ring = relation.ring().clone();
    let u = ring
        .as_integer(&relation.coefficient(&lin))
        .and_then(|c| unit_sign(&c))
        .ok_or(Error::NonUnitLinearPart { generator: name })?;
    let linear = GradedSeries::var(ring.clone(), vars.clone(), relation.order(), generator)
        .scale(&ring.from_int(&u.into()));
    let rest_terms = relation.sub(&linear)?;
    let minus_u = ring.from_int(&(-u).into());

    let rest = vars.without(&[generator]);
    let mut s = GradedSeries::zero(ring.clone(), rest, relation.order());
    let mut converged = false;
    for _ in 0..=relation.order() + 1 {
        let next = quotient_map(relation, generator, &s)?
            .apply(&rest_terms)?
            .scale(&minus_u);
        if next == s {
            converged = true;
            break;
        }
        s = next;
    }
    let substitution = quotient_map(relation, generator, &s)?;
    if !converged || !substitution.apply(relation)?.is_zero() {
        return Err(Error::InvalidInput(
            "elimination did not stabilize within the truncation order".into(),
        ));
    }
    Ok(Elimination {
        generator,
        solution: s,
        substitution,
    })
}
