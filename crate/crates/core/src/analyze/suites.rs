//! Batch verification of structural statements on the corpus plus seeded
//! random instances.
//!
//! Every suite walks a deterministic list of [`Instance`]s. An instance is
//! stored as plain tables, so a failure carries everything needed to replay
//! it with [`replay`].

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::act::{
    all_subacts, all_subacts_oracle, classify_act, coproduct, is_cyclic, is_projective,
    is_semisimple, is_semisimple_by_summands, maximal_subacts, product, rees_quotient,
    zero_decomposition, CoproductMode, RightAct, Subact,
};
use crate::analyze::chain::chain_report;
use crate::analyze::corpus::{corpus_acts, corpus_monoids};
use crate::analyze::random::{random_act_with, random_monoid_with, rng};
use crate::congruence::{all_congruences, extend_congruence, Congruence, Method, ORACLE_CAP};
use crate::error::{Error, Result};
use crate::exact::{
    determination_check, fitting_analysis, rees_ses_from_subact, series_report, verify_rees_ses,
};
use crate::io::{ActTable, MonoidDef};
use crate::monoid::Monoid;
use crate::morphism::{
    enumerate_homs, find_isomorphism, is_generator, is_generator_by_retract, kernel,
    projective_lifting_check, ActHom,
};
use crate::sets::{is_subset, ElemSet};

pub const SUITES: [&str; 13] = [
    "closure",
    "cyclic",
    "ses",
    "series",
    "prodcoprod",
    "semisimple",
    "maxsubacts",
    "fitting",
    "grouplike",
    "cancellative",
    "commutative",
    "endposet",
    "generator",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Seeded random instances added to the exhaustive corpus sweep.
    pub instances: usize,
    pub max_act: usize,
    pub max_monoid: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            instances: 50,
            max_act: 5,
            max_monoid: 4,
        }
    }
}

/// A self-contained test case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub label: String,
    /// Seeds any randomness inside the check itself.
    pub seed: u64,
    pub monoid: MonoidDef,
    #[serde(default)]
    pub acts: Vec<ActTable>,
}

impl Instance {
    pub fn new(label: String, seed: u64, monoid: &Monoid, acts: &[&RightAct]) -> Self {
        Instance {
            label,
            seed,
            monoid: MonoidDef::from(monoid),
            acts: acts.iter().map(|a| ActTable::from(*a)).collect(),
        }
    }

    pub fn load(&self) -> Result<(Arc<Monoid>, Vec<Arc<RightAct>>)> {
        let m = Arc::new(self.monoid.build()?);
        let acts = self
            .acts
            .iter()
            .map(|a| a.build(&m).map(Arc::new))
            .collect::<Result<_>>()?;
        Ok((m, acts))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: Instance,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub config: SuiteConfig,
    pub instances_tested: usize,
    /// Individual implications evaluated across all instances.
    pub checks: usize,
    pub passed: bool,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

/// Contents accepted by [`replay`]: a whole report, a list of instances or
/// a single instance.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ReplayFile {
    Report(VerificationReport),
    Instances(Vec<Instance>),
    Single(Instance),
}

impl ReplayFile {
    pub fn instances(self) -> Vec<Instance> {
        match self {
            ReplayFile::Report(r) => r.failures.into_iter().map(|f| f.instance).collect(),
            ReplayFile::Instances(v) => v,
            ReplayFile::Single(i) => vec![i],
        }
    }
}

struct Ctx {
    failures: Vec<String>,
    checks: usize,
}

impl Ctx {
    fn expect(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(detail());
        }
    }
}

type Check = fn(&mut Ctx, &Instance, &Arc<Monoid>, &[Arc<RightAct>]) -> Result<()>;

fn check_for(name: &str) -> Result<Check> {
    Ok(match name {
        "closure" => check_closure,
        "cyclic" => check_cyclic,
        "ses" => check_ses,
        "series" => check_series,
        "prodcoprod" => check_prodcoprod,
        "semisimple" => check_semisimple,
        "maxsubacts" => check_maxsubacts,
        "fitting" => check_fitting,
        "grouplike" => check_grouplike,
        "cancellative" => check_cancellative,
        "commutative" => check_commutative,
        "endposet" => check_endposet,
        "generator" => check_generator,
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

fn notes_for(name: &str) -> Vec<String> {
    let mut notes = vec![
        "finite instances only: every finite act satisfies both chain conditions, \
                          so the suite checks the finite constructions the arguments rely on"
            .to_string(),
    ];
    let extra = match name {
        "ses" => "the implication is evaluated for every nested pair; vacuous pairs are counted as checks",
        "semisimple" => "finitely generated and finitely many summands hold trivially; \
                         the two semisimplicity procedures are compared instead",
        "commutative" => "only the group-or-local conclusion is checked, not the cited lemma behind it",
        "fitting" => "the cited meet lemma is checked exhaustively, its proof is not",
        "endposet" => "the property quantifying over all acts is out of scope; \
                       lifting is checked on projective acts built from idempotents",
        "generator" => "only the epimorphism from copies of a generator and agreement of the two generator tests are checked; \
                        A + S_S is a generator only when A maps into S_S",
        "cancellative" => "left cancellative means cancellative on the left by every element; \
                           the variant exempting zero is checked as well",
        _ => "",
    };
    if !extra.is_empty() {
        notes.push(extra.to_string());
    }
    notes
}

fn monoid_suite(name: &str) -> bool {
    matches!(name, "cyclic" | "cancellative" | "commutative")
}

/// Runs a suite on the corpus within the configured bounds plus
/// `config.instances` seeded random instances.
pub fn verify_suite(name: &str, config: &SuiteConfig) -> Result<VerificationReport> {
    let check = check_for(name)?;
    if config.max_act == 0 || config.max_monoid == 0 {
        return Err(Error::Invalid("size bounds must be positive".into()));
    }
    let mut instances = exhaustive_instances(name, config)?;
    instances.extend(random_instances(name, config)?);
    run(name, config.clone(), check, &instances)
}

/// Re-runs a suite on stored instances.
pub fn replay(name: &str, instances: &[Instance]) -> Result<VerificationReport> {
    let check = check_for(name)?;
    let config = SuiteConfig {
        instances: 0,
        ..SuiteConfig::default()
    };
    let seed = instances.first().map_or(0, |i| i.seed);
    let mut report = run(name, config, check, instances)?;
    report.seed = seed;
    Ok(report)
}

fn run(
    name: &str,
    config: SuiteConfig,
    check: Check,
    instances: &[Instance],
) -> Result<VerificationReport> {
    let mut failures = Vec::new();
    let mut checks = 0;
    for inst in instances {
        let mut ctx = Ctx {
            failures: Vec::new(),
            checks: 0,
        };
        let outcome = inst
            .load()
            .and_then(|(m, acts)| check(&mut ctx, inst, &m, &acts));
        match outcome {
            Ok(()) => {}
            Err(e @ Error::SizeLimitExceeded(_)) => return Err(e),
            Err(e) => ctx.failures.push(format!("error: {e}")),
        }
        checks += ctx.checks;
        failures.extend(ctx.failures.into_iter().map(|detail| Failure {
            instance: inst.clone(),
            detail,
        }));
    }
    failures.sort_by(|a, b| (&a.instance.label, &a.detail).cmp(&(&b.instance.label, &b.detail)));
    Ok(VerificationReport {
        suite: name.to_string(),
        seed: config.seed,
        instances_tested: instances.len(),
        checks,
        passed: failures.is_empty(),
        failures,
        notes: notes_for(name),
        config,
    })
}

// ---------------------------------------------------------------------------
// instance lists

fn projective_acts(m: &Arc<Monoid>, max_act: usize) -> Result<Vec<RightAct>> {
    let mut base: Vec<RightAct> = Vec::new();
    let mut candidates = vec![RightAct::regular(m)];
    candidates.extend(
        m.idempotents()
            .into_iter()
            .map(|e| RightAct::principal(m, e)),
    );
    for c in candidates {
        if c.size() > max_act {
            continue;
        }
        let mut dup = false;
        for b in &base {
            if b.size() == c.size() && find_isomorphism(b, &c)?.is_some() {
                dup = true;
                break;
            }
        }
        if !dup {
            base.push(c);
        }
    }
    let mut out = base.clone();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            if a.size() + b.size() <= max_act {
                out.push(coproduct(&[a, b], CoproductMode::Plain)?);
            }
        }
    }
    Ok(out)
}

fn exhaustive_instances(name: &str, config: &SuiteConfig) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (mi, cm) in corpus_monoids(config.max_monoid)?.into_iter().enumerate() {
        let m = &cm.monoid;
        let seed = config.seed ^ ((mi as u64) << 32);
        if monoid_suite(name) {
            if name != "commutative" || m.is_commutative() {
                out.push(Instance::new(cm.name.clone(), seed, m, &[]));
            }
            continue;
        }
        if name == "endposet" {
            for (ai, a) in projective_acts(m, config.max_act)?.iter().enumerate() {
                out.push(Instance::new(
                    format!("{}/proj{ai}", cm.name),
                    seed + ai as u64,
                    m,
                    &[a],
                ));
            }
            continue;
        }
        let cls = m.classify();
        if name == "grouplike" && !(cls.is_group || cls.is_0group) {
            continue;
        }
        if name == "semisimple" && m.zero().is_none() {
            continue;
        }
        let acts = corpus_acts(m, config.max_act)?;
        if name == "prodcoprod" {
            for (i, a) in acts.iter().enumerate() {
                for (j, b) in acts.iter().enumerate().skip(i) {
                    if a.size() + b.size() <= config.max_act {
                        out.push(Instance::new(
                            format!("{}/act{i}+act{j}", cm.name),
                            seed,
                            m,
                            &[a, b],
                        ));
                    }
                }
            }
            continue;
        }
        for (ai, a) in acts.iter().enumerate() {
            let wanted = match name {
                "semisimple" => a.zero().is_some(),
                "grouplike" => cls.is_group || a.zero().is_some(),
                _ => true,
            };
            if wanted {
                out.push(Instance::new(
                    format!("{}/act{ai}", cm.name),
                    seed + ai as u64,
                    m,
                    &[a],
                ));
            }
        }
    }
    Ok(out)
}

fn random_group(r: &mut impl Rng, max_size: usize) -> Result<Monoid> {
    for _ in 0..crate::analyze::random::MAX_ATTEMPTS {
        let degree = r.gen_range(1..=4);
        let count = r.gen_range(1..=2);
        let gens: Vec<Vec<usize>> = (0..count)
            .map(|_| {
                let mut p: Vec<usize> = (0..degree).collect();
                p.shuffle(r);
                p
            })
            .collect();
        if let Ok((g, _)) = Monoid::from_transformations(degree, &gens, max_size) {
            return Ok(g);
        }
    }
    Err(Error::SizeLimitExceeded(
        "no random group within the size bound".into(),
    ))
}

/// A random monoid with a zero and at least two elements, so that acts
/// with a zero come in every size.
fn random_zero_monoid(r: &mut impl Rng, max_size: usize) -> Result<Monoid> {
    if max_size < 2 {
        return Err(Error::Invalid(
            "a monoid with a zero needs two elements here".into(),
        ));
    }
    for _ in 0..crate::analyze::random::MAX_ATTEMPTS {
        let degree = r.gen_range(2..=3);
        let m = random_monoid_with(r, degree, false, true, max_size)?;
        if m.size() >= 2 {
            return Ok(m);
        }
    }
    Err(Error::SizeLimitExceeded(
        "no random monoid with a zero".into(),
    ))
}

fn random_instances(name: &str, config: &SuiteConfig) -> Result<Vec<Instance>> {
    let mut master = rng(config.seed);
    let mut out = Vec::with_capacity(config.instances);
    for i in 0..config.instances {
        let seed: u64 = master.gen();
        let mut r = rng(seed);
        let label = format!("random{i:03}");
        let degree = r.gen_range(1..=3);
        let max_monoid = config.max_monoid;
        let inst = match name {
            "cyclic" | "cancellative" => {
                let m = random_monoid_with(&mut r, degree, false, false, max_monoid)?;
                Instance::new(label, seed, &m, &[])
            }
            "commutative" => {
                let m = random_monoid_with(&mut r, degree, true, false, max_monoid)?;
                Instance::new(label, seed, &m, &[])
            }
            "grouplike" => {
                let zero = r.gen_bool(0.5) && max_monoid >= 2;
                let mut g = random_group(&mut r, if zero { max_monoid - 1 } else { max_monoid })?;
                if zero {
                    g = g.with_adjoined_zero();
                }
                let g = Arc::new(g);
                let size = r.gen_range(1..=config.max_act);
                let a = random_act_with(&mut r, &g, size, zero)?;
                Instance::new(label, seed, &g, &[&a])
            }
            "semisimple" => {
                let m = Arc::new(random_zero_monoid(&mut r, max_monoid)?);
                let size = r.gen_range(1..=config.max_act);
                let a = random_act_with(&mut r, &m, size, true)?;
                Instance::new(label, seed, &m, &[&a])
            }
            "endposet" => {
                let m = Arc::new(random_monoid_with(
                    &mut r, degree, false, false, max_monoid,
                )?);
                let acts = projective_acts(&m, config.max_act)?;
                match acts.choose(&mut r) {
                    Some(a) => Instance::new(label, seed, &m, &[a]),
                    None => Instance::new(label, seed, &m, &[&RightAct::regular(&m)]),
                }
            }
            "prodcoprod" => {
                let m = Arc::new(random_monoid_with(
                    &mut r, degree, false, false, max_monoid,
                )?);
                let total = config.max_act.max(2);
                let sa = r.gen_range(1..total);
                let sb = r.gen_range(1..=total - sa);
                let a = random_act_with(&mut r, &m, sa, false)?;
                let b = random_act_with(&mut r, &m, sb, false)?;
                Instance::new(label, seed, &m, &[&a, &b])
            }
            _ => {
                let m = Arc::new(random_monoid_with(
                    &mut r, degree, false, false, max_monoid,
                )?);
                let size = r.gen_range(1..=config.max_act);
                let a = random_act_with(&mut r, &m, size, false)?;
                Instance::new(label, seed, &m, &[&a])
            }
        };
        out.push(inst);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// checks

fn need_acts(acts: &[Arc<RightAct>], n: usize) -> Result<()> {
    if acts.len() < n {
        return Err(Error::Invalid(format!(
            "instance needs {n} act(s), has {}",
            acts.len()
        )));
    }
    Ok(())
}

fn rep_set(cons: &[Congruence]) -> BTreeSet<Vec<usize>> {
    cons.iter().map(|c| c.representatives().to_vec()).collect()
}

/// Subact and factor constructions: congruences of a subact extend to the
/// whole act, congruences of a quotient match the interval above, and
/// subacts of a Rees quotient match those comparable to the collapsed part.
fn check_closure(
    ctx: &mut Ctx,
    _: &Instance,
    _: &Arc<Monoid>,
    acts: &[Arc<RightAct>],
) -> Result<()> {
    need_acts(acts, 1)?;
    let a = &acts[0];
    let subs = all_subacts(a)?;
    let con_a = all_congruences(a, Method::Saturate)?;
    let reps_a = rep_set(&con_a);
    for b in subs.iter().filter(|b| !b.is_whole()) {
        let (b_act, _) = b.to_act();
        let b_act = Arc::new(b_act);
        for rho in all_congruences(&b_act, Method::Saturate)? {
            let ext = extend_congruence(a, b, &rho)?;
            let back = ext.restrict(b, &b_act)?;
            ctx.expect(
                back == rho && reps_a.contains(ext.representatives()),
                || {
                    format!(
                        "congruence {rho} on subact {:?} does not extend faithfully",
                        b.elements()
                    )
                },
            );
        }
    }
    for sigma in &con_a {
        let (q, _) = sigma.quotient();
        let above = con_a.iter().filter(|t| sigma.is_subset_of(t)).count();
        let got = all_congruences(&q, Method::Saturate)?.len();
        ctx.expect(got == above, || {
            format!("quotient by {sigma} has {got} congruences, interval above has {above}")
        });
    }
    for b in &subs {
        let (q, _) = rees_quotient(a, b)?;
        let expected = subs
            .iter()
            .filter(|c| b.is_subset_of(c) || c.elements().iter().all(|&x| !b.contains(x)))
            .count();
        let got = all_subacts(&q)?.len();
        ctx.expect(got == expected, || {
            format!(
                "Rees quotient by {:?} has {got} subacts, expected {expected}",
                b.elements()
            )
        });
    }
    Ok(())
}

/// Every quotient `S/ρ` of the regular act is a valid cyclic act with
/// computable lattices.
fn check_cyclic(ctx: &mut Ctx, _: &Instance, m: &Arc<Monoid>, _: &[Arc<RightAct>]) -> Result<()> {
    let regular = Arc::new(RightAct::regular(m));
    for rho in all_congruences(&regular, Method::Saturate)? {
        let (q, pi) = rho.quotient();
        let valid = RightAct::from_table(Arc::clone(m), q.rows()).is_ok();
        ctx.expect(valid && pi.is_epi(), || {
            format!("S/{rho} is not a valid quotient act")
        });
        ctx.expect(is_cyclic(&q), || format!("S/{rho} is not cyclic"));
        let subs = all_subacts(&q)?;
        let cons = all_congruences(&q, Method::Saturate)?;
        let sub_report = chain_report(&subs)?;
        let con_report = chain_report(&cons)?;
        ctx.expect(
            sub_report.height <= subs.len() && con_report.height <= q.size(),
            || format!("S/{rho} has an impossible chain height"),
        );
        if q.size() <= ORACLE_CAP {
            let oracle = all_congruences(&q, Method::Oracle)?;
            ctx.expect(oracle == cons, || {
                format!("S/{rho}: saturation and oracle disagree")
            });
        }
    }
    Ok(())
}

/// Exactness of every Rees sequence `B' → B → B/B'` and the determination
/// implication for every nested pair of congruences on `B`.
fn check_ses(ctx: &mut Ctx, _: &Instance, _: &Arc<Monoid>, acts: &[Arc<RightAct>]) -> Result<()> {
    need_acts(acts, 1)?;
    let b = &acts[0];
    let cons = all_congruences(b, Method::Saturate)?;
    let nested: Vec<(usize, usize)> = (0..cons.len())
        .flat_map(|i| (0..cons.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| cons[j].is_subset_of(&cons[i]))
        .collect();
    for sub in all_subacts(b)? {
        let ses = rees_ses_from_subact(b, &sub)?;
        let exact = verify_rees_ses(ses.f(), ses.g());
        ctx.expect(exact.holds, || {
            format!(
                "sequence for subact {:?} is not exact: {:?}",
                sub.elements(),
                exact.failure
            )
        });
        let ker = kernel(ses.g());
        let meets: Vec<Congruence> = cons.iter().map(|c| c.meet(&ker)).collect::<Result<_>>()?;
        let joins: Vec<Congruence> = cons.iter().map(|c| c.join(&ker)).collect::<Result<_>>()?;
        for &(i, j) in &nested {
            if meets[i] != meets[j] || joins[i] != joins[j] {
                ctx.checks += 1;
                continue;
            }
            let holds = determination_check(&ses, &cons[i], &cons[j])?;
            ctx.expect(holds, || {
                format!(
                    "subact {:?}: {} and {} agree on meet and join with the kernel",
                    sub.elements(),
                    cons[i],
                    cons[j]
                )
            });
        }
    }
    Ok(())
}

/// Random ascending chains of subacts; every step is an exact Rees
/// sequence and the factor sizes add up.
fn check_series(
    ctx: &mut Ctx,
    inst: &Instance,
    _: &Arc<Monoid>,
    acts: &[Arc<RightAct>],
) -> Result<()> {
    need_acts(acts, 1)?;
    let a = &acts[0];
    let subs = all_subacts(a)?;
    let mut r = rng(inst.seed);
    for _ in 0..3 {
        let mut chain: Vec<ElemSet> = vec![(0..a.size()).collect()];
        loop {
            let last = chain.last().expect("chain starts nonempty");
            let below: Vec<&Subact> = subs
                .iter()
                .filter(|s| s.len() < last.len() && is_subset(s.elements(), last))
                .collect();
            if below.is_empty() || r.gen_bool(0.3) {
                break;
            }
            let pick = below[r.gen_range(0..below.len())];
            chain.push(pick.elements().to_vec());
        }
        chain.reverse();
        let steps = series_report(a, &chain)?;
        let mut total = chain[0].len();
        for (step, pair) in steps.iter().zip(chain.windows(2)) {
            let exact = verify_rees_ses(step.ses.f(), step.ses.g());
            let expected = pair[1].len() - pair[0].len() + 1;
            ctx.expect(exact.holds && step.factor.size() == expected, || {
                format!(
                    "chain {chain:?}: step {:?} ⊆ {:?} is not a Rees sequence",
                    pair[0], pair[1]
                )
            });
            total += step.factor.size() - 1;
        }
        ctx.expect(total == a.size(), || {
            format!("chain {chain:?}: factor sizes do not add up")
        });
    }
    Ok(())
}

fn pullback(
    p: &Arc<RightAct>,
    rho: &Congruence,
    digit: impl Fn(usize) -> usize,
) -> Result<Congruence> {
    let labels: Vec<usize> = (0..p.size())
        .map(|x| rho.representatives()[digit(x)])
        .collect();
    Congruence::from_labels(p, &labels)
}

/// Coproducts and products against their factors.
fn check_prodcoprod(
    ctx: &mut Ctx,
    _: &Instance,
    m: &Arc<Monoid>,
    acts: &[Arc<RightAct>],
) -> Result<()> {
    need_acts(acts, 2)?;
    let (a, b) = (&acts[0], &acts[1]);
    let (na, nb) = (a.size(), b.size());
    let sub_a = all_subacts(a)?.len();
    let sub_b = all_subacts(b)?.len();
    let con_a = all_congruences(a, Method::Saturate)?;
    let con_b = all_congruences(b, Method::Saturate)?;

    let c = Arc::new(coproduct(&[a, b], CoproductMode::Plain)?);
    let inj_a = ActHom::new(Arc::clone(a), Arc::clone(&c), (0..na).collect());
    let inj_b = ActHom::new(Arc::clone(b), Arc::clone(&c), (na..na + nb).collect());
    ctx.expect(
        inj_a.as_ref().is_ok_and(ActHom::is_mono) && inj_b.as_ref().is_ok_and(ActHom::is_mono),
        || "coproduct injections are not injective homomorphisms".into(),
    );
    let sub_c = all_subacts(&c)?.len();
    ctx.expect(sub_c == (sub_a + 1) * (sub_b + 1) - 1, || {
        format!("coproduct has {sub_c} subacts, factors have {sub_a} and {sub_b}")
    });
    let a_in_c = Subact::new(&c, (0..na).collect())?;
    for rho in &con_a {
        let ext = extend_congruence(&c, &a_in_c, rho)?;
        ctx.expect(ext.restrict(&a_in_c, a)? == *rho, || {
            format!("{rho} does not survive extension to the coproduct")
        });
    }

    let p = Arc::new(product(&[a, b])?);
    let pi_a = ActHom::new(
        Arc::clone(&p),
        Arc::clone(a),
        (0..na * nb).map(|x| x / nb).collect(),
    );
    let pi_b = ActHom::new(
        Arc::clone(&p),
        Arc::clone(b),
        (0..na * nb).map(|x| x % nb).collect(),
    );
    match (pi_a, pi_b) {
        (Ok(pa), Ok(pb)) => {
            ctx.expect(pa.is_epi() && pb.is_epi(), || {
                "product projections are not onto".into()
            });
            ctx.expect(kernel(&pa).meet(&kernel(&pb))?.is_delta(), || {
                "projection kernels meet above the diagonal".into()
            });
        }
        _ => ctx.expect(false, || "product projections are not homomorphisms".into()),
    }
    let pulled_a: BTreeSet<Vec<usize>> = con_a
        .iter()
        .map(|r| pullback(&p, r, |x| x / nb).map(|c| c.representatives().to_vec()))
        .collect::<Result<_>>()?;
    let pulled_b: BTreeSet<Vec<usize>> = con_b
        .iter()
        .map(|r| pullback(&p, r, |x| x % nb).map(|c| c.representatives().to_vec()))
        .collect::<Result<_>>()?;
    ctx.expect(
        pulled_a.len() == con_a.len() && pulled_b.len() == con_b.len(),
        || "pulling congruences back along a projection is not injective".into(),
    );

    if m.zero().is_some() {
        let theta = RightAct::trivial(m, 1);
        for x in [a, b] {
            if x.zero().is_some() {
                let glued = coproduct(&[x, &theta], CoproductMode::ZeroAmalgamated)?;
                ctx.expect(find_isomorphism(x, &glued)?.is_some(), || {
                    "A glued with the one-point act at zero is not isomorphic to A".into()
                });
            }
        }
        if a.zero().is_some() && b.zero().is_some() {
            let glued = Arc::new(coproduct(&[a, b], CoproductMode::ZeroAmalgamated)?);
            ctx.expect(
                glued.size() == na + nb - 1 && glued.zero().is_some(),
                || format!("zero-amalgamated coproduct has {} elements", glued.size()),
            );
        }
    }
    Ok(())
}

/// The zero-decomposition test and the complement test for semisimplicity
/// agree; semisimple acts have one generator per summand.
fn check_semisimple(
    ctx: &mut Ctx,
    _: &Instance,
    _: &Arc<Monoid>,
    acts: &[Arc<RightAct>],
) -> Result<()> {
    need_acts(acts, 1)?;
    let a = &acts[0];
    let by_pieces = is_semisimple(a)?;
    let by_complements = is_semisimple_by_summands(a)?;
    ctx.expect(by_pieces == by_complements, || {
        format!("decomposition test says {by_pieces}, complement test says {by_complements}")
    });
    if by_pieces && a.size() > 1 {
        let pieces = zero_decomposition(a)?;
        let gens = a.generators().len();
        ctx.expect(pieces.len() == gens, || {
            format!("{} summands but {gens} generators", pieces.len())
        });
    }
    Ok(())
}

/// Maximal subacts against the subset oracle, and against the
/// maximal right ideals for the regular act.
fn check_maxsubacts(
    ctx: &mut Ctx,
    _: &Instance,
    m: &Arc<Monoid>,
    acts: &[Arc<RightAct>],
) -> Result<()> {
    need_acts(acts, 1)?;
    let a = &acts[0];
    let closed: Vec<ElemSet> = all_subacts_oracle(a)?
        .iter()
        .filter(|s| !s.is_whole())
        .map(|s| s.elements().to_vec())
        .collect();
    let brute: BTreeSet<ElemSet> = closed
        .iter()
        .filter(|s| !closed.iter().any(|t| t.len() > s.len() && is_subset(s, t)))
        .cloned()
        .collect();
    let found: BTreeSet<ElemSet> = maximal_subacts(a)?
        .iter()
        .map(|s| s.elements().to_vec())
        .collect();
    ctx.expect(found == brute, || {
        format!("maximal subacts {found:?}, brute force {brute:?}")
    });
    if **a == RightAct::regular(m) {
        let ideals: BTreeSet<ElemSet> = m.maximal_right_ideals().into_iter().collect();
        ctx.expect(ideals == found && ideals.len() <= 1, || {
            format!("maximal right ideals {ideals:?} differ from maximal subacts {found:?}")
        });
    }
    Ok(())
}

/// Every endomorphism splits the act as kernel plus image congruence at
/// its stable power.
fn check_fitting(
    ctx: &mut Ctx,
    _: &Instance,
    _: &Arc<Monoid>,
    acts: &[Arc<RightAct>],
) -> Result<()> {
    need_acts(acts, 1)?;
    let a = &acts[0];
    let n = a.size();
    for f in enumerate_homs(a, a)? {
        let r = fitting_analysis(a, &f)?;
        let bounded = r.n_image_stable <= n && r.k_meet_trivial.is_some_and(|k| k <= n);
        ctx.expect(
            r.direct_sum_holds && bounded && r.bijective_on_stable_image,
            || format!("endomorphism {:?}: {r:?}", f.map()),
        );
    }
    Ok(())
}

/// Over groups every act is completely reducible; over 0-groups every act
/// with a zero is semisimple.
fn check_grouplike(
    ctx: &mut Ctx,
    _: &Instance,
    m: &Arc<Monoid>,
    acts: &[Arc<RightAct>],
) -> Result<()> {
    need_acts(acts, 1)?;
    let a = &acts[0];
    let cls = m.classify();
    let act_cls = classify_act(a)?;
    if cls.is_group {
        ctx.expect(act_cls.completely_reducible, || {
            "act over a group is not completely reducible".into()
        });
    } else if cls.is_0group && a.zero().is_some() {
        ctx.expect(act_cls.semisimple == Some(true), || {
            "act over a 0-group is not semisimple".into()
        });
    }
    Ok(())
}

fn left_cancellative_off_zero(m: &Monoid) -> bool {
    (0..m.size()).filter(|&a| Some(a) != m.zero()).all(|a| {
        let row: BTreeSet<usize> = (0..m.size()).map(|b| m.mul(a, b)).collect();
        row.len() == m.size()
    })
}

fn check_cancellative(
    ctx: &mut Ctx,
    _: &Instance,
    m: &Arc<Monoid>,
    _: &[Arc<RightAct>],
) -> Result<()> {
    let cls = m.classify();
    if cls.left_cancellative {
        ctx.expect(cls.is_group, || "left cancellative but not a group".into());
    }
    if left_cancellative_off_zero(m) {
        ctx.expect(cls.is_group || cls.is_0group, || {
            "cancellative away from zero but neither a group nor a 0-group".into()
        });
    }
    Ok(())
}

/// Group or local, the powers of the non-units stabilize within `|S|`
/// steps, and a minimum ideal exists.
fn check_commutative(
    ctx: &mut Ctx,
    _: &Instance,
    m: &Arc<Monoid>,
    _: &[Arc<RightAct>],
) -> Result<()> {
    if !m.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let cls = m.classify();
    ctx.expect(cls.is_group || cls.is_local, || {
        "neither a group nor local".into()
    });
    let units = m.units();
    let non_units: ElemSet = (0..m.size()).filter(|x| !units.contains(x)).collect();
    if !non_units.is_empty() {
        let mut prev = m.ideal_power(&non_units, 1);
        let mut stable = None;
        for k in 1..=m.size() {
            let next = m.ideal_power(&non_units, k + 1);
            ctx.expect(is_subset(&next, &prev), || {
                format!("power {} is not inside power {k}", k + 1)
            });
            if next == prev {
                stable = Some(k);
                break;
            }
            prev = next;
        }
        ctx.expect(stable.is_some(), || {
            "ideal powers do not stabilize within |S| steps".into()
        });
    }
    ctx.expect(m.minimum_ideal()?.is_some(), || "no minimum ideal".into());
    Ok(())
}

/// On projective acts: `Im f ⊆ Im g` gives a lift `f = g ∘ h`, and
/// `Im f = Im g` gives equal right ideals `fT = gT` of the endomorphism
/// monoid `T`.
fn check_endposet(
    ctx: &mut Ctx,
    _: &Instance,
    _: &Arc<Monoid>,
    acts: &[Arc<RightAct>],
) -> Result<()> {
    need_acts(acts, 1)?;
    let a = &acts[0];
    ctx.expect(is_projective(a)?, || "act is not projective".into());
    let ends = enumerate_homs(a, a)?;
    let images: Vec<ElemSet> = ends.iter().map(ActHom::image).collect();
    let ideal = |f: &ActHom| -> BTreeSet<Vec<usize>> {
        ends.iter()
            .map(|t| t.map().iter().map(|&x| f.apply(x)).collect())
            .collect()
    };
    let ideals: Vec<BTreeSet<Vec<usize>>> = ends.iter().map(ideal).collect();
    for (i, f) in ends.iter().enumerate() {
        for (j, g) in ends.iter().enumerate() {
            if !is_subset(&images[i], &images[j]) {
                continue;
            }
            let lifts = projective_lifting_check(a, f.map(), g.map(), false)?;
            ctx.expect(lifts, || {
                format!("{:?} does not factor through {:?}", f.map(), g.map())
            });
            if images[i] == images[j] {
                ctx.expect(ideals[i] == ideals[j], || {
                    format!(
                        "{:?} and {:?} have equal images but different right ideals",
                        f.map(),
                        g.map()
                    )
                });
            }
        }
    }
    Ok(())
}

/// `A + S_S` is a generator exactly when some homomorphism `A → S_S`
/// exists, the copies of `S_S` indexed by generators of `A` map onto `A`,
/// and both generator tests agree on `A`.
fn check_generator(
    ctx: &mut Ctx,
    _: &Instance,
    m: &Arc<Monoid>,
    acts: &[Arc<RightAct>],
) -> Result<()> {
    need_acts(acts, 1)?;
    let a = &acts[0];
    let regular = Arc::new(RightAct::regular(m));
    let sum = coproduct(&[a, &regular], CoproductMode::Plain)?;
    let maps_to_regular = !enumerate_homs(a, &regular)?.is_empty();
    let sum_generates = is_generator(&sum)?;
    ctx.expect(sum_generates == maps_to_regular, || {
        format!(
            "A + S_S generator: {sum_generates}, homomorphism A -> S_S exists: {maps_to_regular}"
        )
    });

    let gens = a.generators();
    let copies: Vec<&RightAct> = gens.iter().map(|_| regular.as_ref()).collect();
    let free = Arc::new(coproduct(&copies, CoproductMode::Plain)?);
    let n = m.size();
    let map: Vec<usize> = (0..free.size())
        .map(|x| a.act(gens[x / n], x % n))
        .collect();
    let onto = ActHom::new(free, Arc::clone(a), map).is_ok_and(|h| h.is_epi());
    ctx.expect(onto, || {
        "copies of S_S do not map onto A through its generators".into()
    });

    let by_epi = is_generator(a)?;
    let by_retract = is_generator_by_retract(a)?;
    ctx.expect(by_epi == by_retract, || {
        format!("epimorphism test says {by_epi}, retract test says {by_retract}")
    });
    Ok(())
}
