//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sact_core::act::{all_subacts, classify_act, coproduct, is_projective, CoproductMode};
use sact_core::analyze::census::monoids_of_order;
use sact_core::analyze::chain::{chain_report, lattice_dot, min_family_act};
use sact_core::analyze::corpus::{corpus_acts, corpus_monoids, corpus_pairs, CorpusMonoid};
use sact_core::analyze::SUITES;
use sact_core::congruence::{
    all_congruences, meet_family, meet_reduction, minimal_generating_pairs, Congruence, Method,
};
use sact_core::exact::{determination_check, fitting_analysis, rees_ses_from_subact};
use sact_core::morphism::{enumerate_homs, find_isomorphism, projective_lifting_check};
use sact_core::{Monoid, Result, RightAct};

type Criterion = (&'static str, fn() -> Verdict);

/// Outcome of one criterion: a summary line or the first few failures.
type Verdict = std::result::Result<String, Vec<String>>;

struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 10 {
            self.failures.push(detail());
        }
    }

    fn verdict(self, summary: String) -> Verdict {
        if self.failures.is_empty() {
            Ok(format!("{summary}, {} checks", self.checks))
        } else {
            Err(self.failures)
        }
    }
}

fn run(f: impl FnOnce(&mut Tally) -> Result<String>) -> Verdict {
    let mut t = Tally::new();
    match f(&mut t) {
        Ok(summary) => t.verdict(summary),
        Err(e) => Err(vec![format!("engine error: {e}")]),
    }
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn sact(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_sact"))
        .args(args)
        .output()
        .expect("spawn sact")
}

fn oracle_equivalence() -> Verdict {
    run(|t| {
        let pairs = corpus_pairs(4, 5)?;
        let mut acts = 0;
        let mut sizes = BTreeSet::new();
        for (cm, list) in &pairs {
            sizes.insert(cm.monoid.size());
            for a in list {
                acts += 1;
                let fast = all_congruences(a, Method::Saturate)?;
                let slow = all_congruences(a, Method::Oracle)?;
                t.expect(fast == slow, || format!("{}: act {:?}", cm.name, a.rows()));
            }
        }
        let small = pairs.iter().filter(|(cm, _)| cm.monoid.size() <= 3).count();
        t.expect(acts >= 200, || format!("only {acts} corpus acts"));
        t.expect(small == 1 + 2 + 7, || {
            format!("{small} monoids of size <= 3")
        });
        Ok(format!("{acts} acts over {} monoids", pairs.len()))
    })
}

fn determination_sweep() -> Verdict {
    run(|t| {
        let mut sequences = 0;
        for (cm, list) in corpus_pairs(4, 5)? {
            for b in &list {
                let con = all_congruences(b, Method::Saturate)?;
                for sub in all_subacts(b)? {
                    let ses = rees_ses_from_subact(b, &sub)?;
                    sequences += 1;
                    for rho in &con {
                        for rho_prime in con.iter().filter(|c| c.is_subset_of(rho)) {
                            let holds = determination_check(&ses, rho, rho_prime)?;
                            t.expect(holds, || {
                                format!(
                                    "{}: act {:?}, subact {:?}, {rho} vs {rho_prime}",
                                    cm.name,
                                    b.rows(),
                                    sub.elements()
                                )
                            });
                        }
                    }
                }
            }
        }
        Ok(format!("{sequences} sequences"))
    })
}

fn fitting_sweep() -> Verdict {
    run(|t| {
        let mut endos = 0;
        for (cm, list) in corpus_pairs(4, 6)? {
            for a in &list {
                let n = a.size();
                for f in enumerate_homs(a, a)? {
                    endos += 1;
                    let r = fitting_analysis(a, &f)?;
                    let bounded = r.n_image_stable <= n && r.k_meet_trivial.is_some_and(|k| k <= n);
                    t.expect(r.direct_sum_holds && bounded, || {
                        format!("{}: act {:?}, endo {:?}: {r:?}", cm.name, a.rows(), f.map())
                    });
                }
            }
        }
        Ok(format!("{endos} endomorphisms"))
    })
}

fn path_graph(dot: &str, n: usize) -> bool {
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
    edges.len() == n.saturating_sub(1)
}

fn min_monoid_family() -> Verdict {
    run(|t| {
        let dir = std::env::temp_dir().join(format!("sact-acceptance-{}", std::process::id()));
        std::fs::create_dir_all(&dir).expect("temp dir");
        for n in 1..=8 {
            let (_, k) = min_family_act(n);
            let subs = all_subacts(&k)?;
            let r = chain_report(&subs)?;
            t.expect(r.height == n && r.element_count == n, || {
                format!("n = {n}: {r:?}")
            });
            t.expect(path_graph(&lattice_dot("K", &subs), n), || {
                format!("n = {n}: DOT is not a path")
            });

            let o = sact(&["builtin", "--family", "min-monoid", "--n", &n.to_string()]);
            let file = dir.join(format!("min{n}.json"));
            let dot = dir.join(format!("min{n}.dot"));
            std::fs::write(&file, &o.stdout).expect("write workspace");
            let o = sact(&[
                "--json",
                "lattice",
                file.to_str().unwrap(),
                "--act",
                "K",
                "--kind",
                "subacts",
                "--dot",
                dot.to_str().unwrap(),
            ]);
            let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap_or_default();
            t.expect(o.status.success() && v["report"]["height"] == n, || {
                format!("cli n = {n}: {v}")
            });
            let text = std::fs::read_to_string(&dot).unwrap_or_default();
            t.expect(path_graph(&text, n), || {
                format!("cli n = {n}: DOT is not a path")
            });
        }
        let _ = std::fs::remove_dir_all(&dir);
        Ok("n = 1..8".into())
    })
}

fn cancellative_dichotomy() -> Verdict {
    run(|t| {
        let mut counts = Vec::new();
        let mut cancellative = 0;
        for n in 1..=4 {
            let ms = monoids_of_order(n)?;
            counts.push(ms.len());
            for m in &ms {
                let c = m.classify();
                if c.left_cancellative {
                    cancellative += 1;
                    t.expect(c.is_group || c.is_0group, || {
                        format!("table {:?}", m.rows())
                    });
                }
            }
        }
        t.expect(counts == [1, 2, 7, 35], || {
            format!("census counts {counts:?}")
        });
        Ok(format!(
            "census {counts:?}, {cancellative} left-cancellative"
        ))
    })
}

fn commutative_dichotomy() -> Verdict {
    run(|t| {
        let mut seen = 0;
        for cm in corpus_monoids(6)? {
            let m = &cm.monoid;
            if !m.is_commutative() {
                continue;
            }
            seen += 1;
            let c = m.classify();
            t.expect(c.is_group || c.is_local, || {
                format!("{}: neither group nor local", cm.name)
            });
            let non_units: Vec<usize> = (0..m.size()).filter(|x| !c.units.contains(x)).collect();
            if !non_units.is_empty() {
                let stable = (1..=m.size())
                    .find(|&k| m.ideal_power(&non_units, k) == m.ideal_power(&non_units, k + 1));
                t.expect(stable.is_some(), || {
                    format!("{}: powers do not stabilize", cm.name)
                });
            }
            t.expect(m.minimum_ideal()?.is_some(), || {
                format!("{}: no minimum ideal", cm.name)
            });
        }
        Ok(format!("{seen} commutative monoids"))
    })
}

fn generation_inverse() -> Verdict {
    run(|t| {
        let mut count = 0;
        for (cm, list) in corpus_pairs(4, 5)? {
            for a in &list {
                let con = all_congruences(a, Method::Saturate)?;
                if con.len() > 200 {
                    continue;
                }
                for rho in &con {
                    count += 1;
                    let pairs = minimal_generating_pairs(rho)?;
                    t.expect(Congruence::generated(a, &pairs)? == *rho, || {
                        format!("{}: act {:?}, {rho} from {pairs:?}", cm.name, a.rows())
                    });
                }
            }
        }
        Ok(format!("{count} congruences"))
    })
}

fn meet_reduction_sweep() -> Verdict {
    run(|t| {
        let mut families = 0;
        for (mi, (cm, list)) in corpus_pairs(4, 5)?.into_iter().enumerate() {
            for (ai, a) in list.iter().enumerate() {
                let con = all_congruences(a, Method::Saturate)?;
                let mut rng = ChaCha8Rng::seed_from_u64(((mi as u64) << 16) | ai as u64);
                for _ in 0..100 {
                    families += 1;
                    let len = rng.gen_range(1..=con.len().min(6));
                    let family: Vec<Congruence> = (0..len)
                        .map(|_| con.choose(&mut rng).unwrap().clone())
                        .collect();
                    let theta = meet_family(&family)?;
                    let kept = meet_reduction(&theta, &family)?;
                    let same = meet_family(&kept)? == theta;
                    let drawn = kept.iter().all(|k| family.contains(k));
                    let minimal = kept.len() == 1
                        || (0..kept.len()).all(|i| {
                            let rest: Vec<Congruence> = kept
                                .iter()
                                .enumerate()
                                .filter(|p| p.0 != i)
                                .map(|p| p.1.clone())
                                .collect();
                            meet_family(&rest).map(|m| m != theta).unwrap_or(false)
                        });
                    t.expect(same && drawn && minimal, || {
                        format!(
                            "{}: act {:?}, family of {len}, kept {}",
                            cm.name,
                            a.rows(),
                            kept.len()
                        )
                    });
                }
            }
        }
        Ok(format!("{families} families"))
    })
}

fn projective_family(m: &Arc<Monoid>, max: usize) -> Result<Vec<Arc<RightAct>>> {
    let mut base: Vec<RightAct> = Vec::new();
    let mut candidates = vec![RightAct::regular(m)];
    candidates.extend(
        m.idempotents()
            .into_iter()
            .map(|e| RightAct::principal(m, e)),
    );
    for c in candidates {
        let mut dup = c.size() > max;
        for b in &base {
            dup = dup || (b.size() == c.size() && find_isomorphism(b, &c)?.is_some());
        }
        if !dup {
            base.push(c);
        }
    }
    let mut out: Vec<Arc<RightAct>> = base.iter().cloned().map(Arc::new).collect();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            if a.size() + b.size() <= max {
                out.push(Arc::new(coproduct(&[a, b], CoproductMode::Plain)?));
            }
        }
    }
    Ok(out)
}

fn projective_lifting() -> Verdict {
    run(|t| {
        let mut acts = 0;
        for cm in corpus_monoids(4)? {
            for a in projective_family(&cm.monoid, 6)? {
                acts += 1;
                t.expect(is_projective(&a)?, || {
                    format!("{}: {:?} not projective", cm.name, a.rows())
                });
                let ends = enumerate_homs(&a, &a)?;
                let images: Vec<Vec<usize>> = ends.iter().map(|f| f.image()).collect();
                let right_ideal = |f: &[usize]| -> BTreeSet<Vec<usize>> {
                    ends.iter()
                        .map(|h| h.map().iter().map(|&x| f[x]).collect())
                        .collect()
                };
                for (i, f) in ends.iter().enumerate() {
                    for (j, g) in ends.iter().enumerate() {
                        if !subset(&images[i], &images[j]) {
                            continue;
                        }
                        t.expect(
                            projective_lifting_check(&a, f.map(), g.map(), false)?,
                            || {
                                format!(
                                    "{}: {:?} does not lift through {:?}",
                                    cm.name,
                                    f.map(),
                                    g.map()
                                )
                            },
                        );
                        if images[i] == images[j] {
                            t.expect(right_ideal(f.map()) == right_ideal(g.map()), || {
                                format!("{}: fT != gT for {:?}, {:?}", cm.name, f.map(), g.map())
                            });
                        }
                    }
                }
            }
        }
        Ok(format!("{acts} projective acts"))
    })
}

fn grouplike_decompositions() -> Verdict {
    run(|t| {
        let mut groups = 0;
        let mut zero_groups = 0;
        for CorpusMonoid { name, monoid } in corpus_monoids(6)? {
            let c = monoid.classify();
            let wanted = (c.is_group && monoid.size() <= 6) || (c.is_0group && monoid.size() <= 5);
            if !wanted {
                continue;
            }
            if c.is_group {
                groups += 1;
            } else {
                zero_groups += 1;
            }
            for a in corpus_acts(&monoid, 6)? {
                let ac = classify_act(&a)?;
                if c.is_group {
                    t.expect(ac.completely_reducible, || {
                        format!("{name}: {:?}", a.rows())
                    });
                } else if a.zero().is_some() {
                    t.expect(ac.semisimple == Some(true), || {
                        format!("{name}: {:?}", a.rows())
                    });
                }
            }
        }
        Ok(format!("{groups} groups, {zero_groups} 0-groups"))
    })
}

fn determinism() -> Verdict {
    run(|t| {
        for suite in SUITES {
            for seed in ["1", "7"] {
                let args = ["--json", "verify", "--suite", suite, "--seed", seed];
                let first = sact(&args);
                let second = sact(&args);
                t.expect(first.status.success(), || {
                    format!("{suite} seed {seed}: exit {:?}", first.status.code())
                });
                t.expect(
                    !first.stdout.is_empty() && first.stdout == second.stdout,
                    || format!("{suite} seed {seed}: reports differ"),
                );
            }
        }
        Ok(format!("{} suites, 2 seeds", SUITES.len()))
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("oracle equivalence", oracle_equivalence),
        ("determination sweep", determination_sweep),
        ("fitting sweep", fitting_sweep),
        ("min-monoid family", min_monoid_family),
        ("cancellative dichotomy", cancellative_dichotomy),
        ("commutative dichotomy", commutative_dichotomy),
        ("generation inverse", generation_inverse),
        ("meet reduction", meet_reduction_sweep),
        ("projective lifting", projective_lifting),
        ("group and 0-group decompositions", grouplike_decompositions),
        ("determinism", determinism),
    ];
    let results: Vec<(Verdict, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                s.spawn(move || {
                    let start = Instant::now();
                    let v = f();
                    (v, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| (Err(vec!["panicked".into()]), 0.0))
            })
            .collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (verdict, secs))) in criteria.iter().zip(&results).enumerate() {
        match verdict {
            Ok(summary) => println!(
                "criterion {:>2} {name} ... PASS ({summary}; {secs:.1}s)",
                i + 1
            ),
            Err(failures) => {
                failed += 1;
                println!("criterion {:>2} {name} ... FAIL ({secs:.1}s)", i + 1);
                for f in failures {
                    println!("    {f}");
                }
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
