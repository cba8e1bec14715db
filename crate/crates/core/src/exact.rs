//! Rees short exact sequences, series of subacts and Fitting analysis of
//! endomorphisms.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::act::{rees_quotient, RightAct, Subact};
use crate::congruence::{BlockList, Congruence};
use crate::error::{Error, Result};
use crate::morphism::{enumerate_homs, image_congruence, kernel, ActHom};
use crate::sets::{is_subset, ElemSet};

/// `A →f B →g C` with `f` injective, `g` surjective and `ker g = K_Im f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesSes {
    f: ActHom,
    g: ActHom,
}

/// Why a pair of maps fails to be a Rees short exact sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SesFailure {
    NotComposable,
    /// `f(a) = f(b)` with `a ≠ b`.
    NotInjective {
        a: usize,
        b: usize,
    },
    /// `c` is not in the image of `g`.
    NotSurjective {
        c: usize,
    },
    /// `(a, b)` lies in exactly one of `ker g` and `K_Im f`.
    KernelMismatch {
        a: usize,
        b: usize,
        in_kernel: bool,
    },
}

/// Diagnosis returned by [`verify_rees_ses`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesCheck {
    pub holds: bool,
    pub failure: Option<SesFailure>,
}

pub fn verify_rees_ses(f: &ActHom, g: &ActHom) -> SesCheck {
    let fail = |failure| SesCheck {
        holds: false,
        failure: Some(failure),
    };
    if **f.target() != **g.source() {
        return fail(SesFailure::NotComposable);
    }
    let mut seen = vec![usize::MAX; f.target().size()];
    for (a, &x) in f.map().iter().enumerate() {
        if seen[x] != usize::MAX {
            return fail(SesFailure::NotInjective { a: seen[x], b: a });
        }
        seen[x] = a;
    }
    let mut hit = vec![false; g.target().size()];
    for &y in g.map() {
        hit[y] = true;
    }
    if let Some(c) = hit.iter().position(|&h| !h) {
        return fail(SesFailure::NotSurjective { c });
    }
    let ker = kernel(g);
    let im = image_congruence(f);
    let n = g.source().size();
    for a in 0..n {
        for b in a + 1..n {
            let in_kernel = ker.related(a, b);
            if in_kernel != im.related(a, b) {
                return fail(SesFailure::KernelMismatch { a, b, in_kernel });
            }
        }
    }
    SesCheck {
        holds: true,
        failure: None,
    }
}

impl ReesSes {
    pub fn new(f: ActHom, g: ActHom) -> Result<Self> {
        let check = verify_rees_ses(&f, &g);
        match check.failure {
            None => Ok(ReesSes { f, g }),
            Some(failure) => Err(Error::Invalid(format!(
                "not a Rees short exact sequence: {failure:?}"
            ))),
        }
    }

    pub fn f(&self) -> &ActHom {
        &self.f
    }

    pub fn g(&self) -> &ActHom {
        &self.g
    }

    /// The middle act `B`.
    pub fn middle(&self) -> &Arc<RightAct> {
        self.g.source()
    }
}

/// `B' → B → B/B'`: the inclusion followed by the Rees quotient map.
pub fn rees_ses_from_subact(b: &Arc<RightAct>, sub: &Subact) -> Result<ReesSes> {
    let (_, f) = ActHom::inclusion(sub);
    let (_, g) = rees_quotient(b, sub)?;
    let ses = ReesSes { f, g };
    debug_assert!(verify_rees_ses(&ses.f, &ses.g).holds);
    Ok(ses)
}

/// For `ρ' ⊆ ρ` on the middle act: if `ρ` and `ρ'` have the same meet and
/// the same join with `ker g`, then `ρ = ρ'`. The implication is evaluated,
/// so `false` means a counterexample was found.
pub fn determination_check(
    ses: &ReesSes,
    rho: &Congruence,
    rho_prime: &Congruence,
) -> Result<bool> {
    if !rho_prime.is_subset_of(rho) {
        return Err(Error::NotNested);
    }
    let ker = kernel(&ses.g);
    let hypothesis =
        rho.meet(&ker)? == rho_prime.meet(&ker)? && rho.join(&ker)? == rho_prime.join(&ker)?;
    Ok(!hypothesis || rho == rho_prime)
}

/// One factor of a series: `A_i → A_{i+1} → A_{i+1}/A_i`.
#[derive(Debug, Clone)]
pub struct SeriesStep {
    pub factor: Arc<RightAct>,
    pub ses: ReesSes,
}

/// Rees factors of an ascending chain `A_1 ⊆ … ⊆ A_n = A` given as element
/// sets of `act`.
pub fn series_report(act: &Arc<RightAct>, chain: &[ElemSet]) -> Result<Vec<SeriesStep>> {
    let subs: Vec<Subact> = chain
        .iter()
        .map(|c| {
            Subact::new(act, c.clone())
                .map_err(|e| Error::NotAChain(format!("{c:?} is not a subact: {e}")))
        })
        .collect::<Result<_>>()?;
    let last = subs
        .last()
        .ok_or_else(|| Error::NotAChain("empty chain".into()))?;
    if !last.is_whole() {
        return Err(Error::NotAChain(
            "chain does not end at the whole act".into(),
        ));
    }
    let mut steps = Vec::with_capacity(subs.len().saturating_sub(1));
    for pair in subs.windows(2) {
        let (lower, upper) = (&pair[0], &pair[1]);
        if !lower.is_subset_of(upper) {
            return Err(Error::NotAChain(format!(
                "{:?} is not contained in {:?}",
                lower.elements(),
                upper.elements()
            )));
        }
        let (upper_act, embed) = upper.to_act();
        let upper_act = Arc::new(upper_act);
        let local: Vec<usize> = lower
            .elements()
            .iter()
            .map(|a| embed.binary_search(a).expect("lower ⊆ upper"))
            .collect();
        let lower_local = Subact::new(&upper_act, local)?;
        let ses = rees_ses_from_subact(&upper_act, &lower_local)?;
        steps.push(SeriesStep {
            factor: Arc::clone(ses.g.target()),
            ses,
        });
    }
    Ok(steps)
}

/// Result of [`fitting_analysis`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FittingReport {
    /// Least `n` with `Im fⁿ = Im f²ⁿ`.
    pub n_image_stable: usize,
    /// Least `k` with `ker fᵏ ∩ K_Im fᵏ = Δ`, if one exists up to `|A|`.
    pub k_meet_trivial: Option<usize>,
    pub l: usize,
    pub join_is_nabla: bool,
    pub meet_is_delta: bool,
    pub direct_sum_holds: bool,
    pub kernel: BlockList,
    pub image_congruence: BlockList,
    pub stable_image: ElemSet,
    /// `f` maps `Im fˡ` bijectively onto itself.
    pub bijective_on_stable_image: bool,
}

fn power(f: &[usize], k: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..f.len()).collect();
    for _ in 0..k {
        p = p.iter().map(|&x| f[x]).collect();
    }
    p
}

/// Image chain and kernel/image congruences of the powers of an
/// endomorphism. Exponents are searched up to `|A|`, where the strictly
/// shrinking image chain must have stabilized.
pub fn fitting_analysis(act: &Arc<RightAct>, f: &ActHom) -> Result<FittingReport> {
    if **f.source() != **act || **f.target() != **act {
        return Err(Error::Invalid(
            "fitting analysis needs an endomorphism".into(),
        ));
    }
    let n = act.size();
    let hom_of =
        |k: usize| ActHom::new_unchecked(Arc::clone(act), Arc::clone(act), power(f.map(), k));

    let image_of = |k: usize| hom_of(k).image();
    let n_stable = (1..=n)
        .find(|&k| image_of(k) == image_of(2 * k))
        .ok_or_else(|| Error::Invalid("image chain failed to stabilize".into()))?;

    let k_trivial = (1..=n).find(|&k| {
        let h = hom_of(k);
        kernel(&h)
            .meet(&image_congruence(&h))
            .map(|c| c.is_delta())
            .unwrap_or(false)
    });

    let l = n_stable.max(k_trivial.unwrap_or(n_stable));
    let h = hom_of(l);
    let ker = kernel(&h);
    let im = image_congruence(&h);
    let join_is_nabla = ker.join(&im)?.is_nabla();
    let meet_is_delta = ker.meet(&im)?.is_delta();

    let stable_image = h.image();
    let mut hit = vec![false; n];
    let mut bijective = true;
    for &x in &stable_image {
        let y = f.apply(x);
        if stable_image.binary_search(&y).is_err() || std::mem::replace(&mut hit[y], true) {
            bijective = false;
        }
    }

    Ok(FittingReport {
        n_image_stable: n_stable,
        k_meet_trivial: k_trivial,
        l,
        join_is_nabla,
        meet_is_delta,
        direct_sum_holds: join_is_nabla && meet_is_delta,
        kernel: ker.block_list(),
        image_congruence: im.block_list(),
        stable_image,
        bijective_on_stable_image: bijective,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohopfianReport {
    pub holds: bool,
    pub injective_endomorphisms: Vec<Vec<usize>>,
}

/// Every injective endomorphism is bijective.
pub fn cohopfian_check(act: &Arc<RightAct>) -> Result<CohopfianReport> {
    let injective: Vec<ActHom> = enumerate_homs(act, act)?
        .into_iter()
        .filter(ActHom::is_mono)
        .collect();
    Ok(CohopfianReport {
        holds: injective.iter().all(ActHom::is_epi),
        injective_endomorphisms: injective.iter().map(|h| h.map().to_vec()).collect(),
    })
}

/// `Im f ⊆ Im g` for two maps into the same act.
pub fn image_contained(f: &ActHom, g: &ActHom) -> bool {
    is_subset(&f.image(), &g.image())
}
