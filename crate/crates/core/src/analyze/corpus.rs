//! The shipped test corpus: every monoid of order at most four up to
//! isomorphism, a handful of named larger monoids, and for each monoid the
//! small acts built from its cyclic acts.

use std::sync::Arc;

use crate::act::{coproduct, product, CoproductMode, RightAct};
use crate::analyze::census::{census, CENSUS_MAX};
use crate::congruence::{all_congruences, Method};
use crate::error::Result;
use crate::monoid::Monoid;
use crate::morphism::find_isomorphism;

/// Upper bound on the acts kept per monoid.
pub const ACTS_PER_MONOID: usize = 40;

#[derive(Debug, Clone)]
pub struct CorpusMonoid {
    pub name: String,
    pub monoid: Arc<Monoid>,
}

fn named_extras() -> Vec<(&'static str, Monoid)> {
    let z2 = Monoid::cyclic_group(2);
    let s3 = Monoid::from_transformations(3, &[vec![1, 0, 2], vec![1, 2, 0]], 10)
        .expect("S3 closes at six elements")
        .0;
    vec![
        ("Z5", Monoid::cyclic_group(5)),
        ("Z6", Monoid::cyclic_group(6)),
        ("S3", s3),
        ("Z4^0", Monoid::cyclic_group(4).with_adjoined_zero()),
        ("V4^0", z2.direct_product(&z2).with_adjoined_zero()),
        ("min4", Monoid::min_with_identity(4)),
    ]
}

/// Corpus monoids with at most `max_size` elements: the census first, in
/// census order, then the named extras larger than the census bound.
pub fn corpus_monoids(max_size: usize) -> Result<Vec<CorpusMonoid>> {
    let mut out = Vec::new();
    let mut index = [0usize; CENSUS_MAX + 1];
    for m in census(max_size.min(CENSUS_MAX))? {
        let n = m.size();
        out.push(CorpusMonoid {
            name: format!("census{n}_{}", index[n]),
            monoid: Arc::new(m),
        });
        index[n] += 1;
    }
    for (name, m) in named_extras() {
        if m.size() > CENSUS_MAX && m.size() <= max_size {
            out.push(CorpusMonoid {
                name: name.to_string(),
                monoid: Arc::new(m),
            });
        }
    }
    Ok(out)
}

struct Collector {
    acts: Vec<Arc<RightAct>>,
    max_size: usize,
}

impl Collector {
    fn offer(&mut self, act: RightAct) -> Result<()> {
        if act.size() > self.max_size || self.acts.len() >= ACTS_PER_MONOID {
            return Ok(());
        }
        for seen in &self.acts {
            if seen.size() == act.size() && find_isomorphism(seen, &act)?.is_some() {
                return Ok(());
            }
        }
        self.acts.push(Arc::new(act));
        Ok(())
    }
}

/// Acts over `monoid` with at most `max_size` elements, pairwise
/// non-isomorphic: cyclic quotients `S/ρ` and cyclic right ideals `sS`,
/// then coproducts (plain and zero-amalgamated) and products of pairs,
/// then plain coproducts of three cyclic acts.
pub fn corpus_acts(monoid: &Arc<Monoid>, max_size: usize) -> Result<Vec<Arc<RightAct>>> {
    let mut c = Collector {
        acts: Vec::new(),
        max_size,
    };
    let regular = Arc::new(RightAct::regular(monoid));
    for rho in all_congruences(&regular, Method::Saturate)? {
        c.offer((*rho.quotient().0).clone())?;
    }
    for s in 0..monoid.size() {
        c.offer(RightAct::principal(monoid, s))?;
    }
    let base = c.acts.clone();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            if a.size() + b.size() <= max_size {
                c.offer(coproduct(&[a.as_ref(), b.as_ref()], CoproductMode::Plain)?)?;
            }
            let zeros = monoid.zero().is_some() && a.zero().is_some() && b.zero().is_some();
            if zeros && a.size() + b.size() <= max_size + 1 {
                c.offer(coproduct(
                    &[a.as_ref(), b.as_ref()],
                    CoproductMode::ZeroAmalgamated,
                )?)?;
            }
            if a.size() * b.size() <= max_size {
                c.offer(product(&[a.as_ref(), b.as_ref()])?)?;
            }
        }
    }
    for (i, a) in base.iter().enumerate() {
        for (j, b) in base.iter().enumerate().skip(i) {
            for d in &base[j..] {
                if a.size() + b.size() + d.size() <= max_size {
                    c.offer(coproduct(
                        &[a.as_ref(), b.as_ref(), d.as_ref()],
                        CoproductMode::Plain,
                    )?)?;
                }
            }
        }
    }
    Ok(c.acts)
}

/// Every (monoid, act) pair of the corpus within the size bounds.
pub fn corpus_pairs(
    max_monoid: usize,
    max_act: usize,
) -> Result<Vec<(CorpusMonoid, Vec<Arc<RightAct>>)>> {
    corpus_monoids(max_monoid)?
        .into_iter()
        .map(|m| {
            let acts = corpus_acts(&m.monoid, max_act)?;
            Ok((m, acts))
        })
        .collect()
}
