use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use sact_core::act::{
    all_subacts, all_subacts_oracle, classify_act, decompose_indecomposable,
    is_completely_reducible, is_semisimple, is_theta_simple, rees_quotient, zero_decomposition,
    Subact,
};
use sact_core::analyze::{
    chain_report, lattice_dot, min_family_act, random_act, random_monoid, replay, verify_suite,
    LatticeReport, RandomConfig, ReplayFile,
};
use sact_core::congruence::all_congruences;
use sact_core::exact::{fitting_analysis, series_report, verify_rees_ses};
use sact_core::io::{ActDef, ActTable, MonoidRef, Workspace};
use sact_core::sets::format_set;
use sact_core::{ActHom, Congruence, Method, RightAct, SuiteConfig, WorkspaceFile};

use crate::text;
use crate::{DecomposeMode, Failure, Family, GenKind, LatticeKind};

type Outcome = Result<(), Failure>;

fn print_json<T: Serialize>(value: &T) {
    outln!("{}", sact_core::io::to_pretty_json(value));
}

fn load(file: &Path) -> Result<(WorkspaceFile, Workspace), Failure> {
    let raw = WorkspaceFile::read(file)?;
    let ws = raw.load()?;
    Ok((raw, ws))
}

fn find_act(ws: &Workspace, name: &str) -> Result<Arc<RightAct>, Failure> {
    ws.acts.get(name).cloned().ok_or_else(|| {
        let known: Vec<&str> = ws.acts.keys().map(String::as_str).collect();
        Failure::Usage(format!(
            "no act named `{name}` (known: {})",
            known.join(", ")
        ))
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn validate(file: &Path, json: bool) -> Outcome {
    let (_, ws) = load(file)?;
    let mut monoids = serde_json::Map::new();
    let mut rows = vec![vec![
        "kind".to_string(),
        "name".into(),
        "size".into(),
        "zero".into(),
        "properties".into(),
    ]];
    for (name, m) in &ws.monoids {
        let c = m.classify();
        rows.push(vec![
            "monoid".into(),
            name.clone(),
            m.size().to_string(),
            m.zero().map_or("-".into(), |z| z.to_string()),
            text::flags(&[
                ("commutative", c.commutative),
                ("left-cancellative", c.left_cancellative),
                ("group", c.is_group),
                ("0-group", c.is_0group),
                ("local", c.is_local),
            ]),
        ]);
        monoids.insert(
            name.clone(),
            json!({ "size": m.size(), "zero": m.zero(), "classification": c }),
        );
    }
    let mut acts = serde_json::Map::new();
    for (name, a) in &ws.acts {
        let c = classify_act(a)?;
        rows.push(vec![
            "act".into(),
            name.clone(),
            a.size().to_string(),
            a.zero().map_or("-".into(), |z| z.to_string()),
            text::flags(&[
                ("simple", c.simple),
                ("theta-simple", c.theta_simple),
                ("cyclic", c.cyclic),
                ("generator", c.generator),
                ("projective", c.projective),
                ("semisimple", c.semisimple == Some(true)),
                ("completely-reducible", c.completely_reducible),
            ]),
        ]);
        acts.insert(
            name.clone(),
            json!({ "size": a.size(), "zero": a.zero(), "classification": c }),
        );
    }
    if json {
        print_json(&json!({ "valid": true, "monoids": monoids, "acts": acts }));
    } else {
        out!("{}", text::table(&rows));
    }
    Ok(())
}

fn print_lattice(report: &LatticeReport, oracle: Option<bool>) {
    let mut rows = vec![
        vec!["elements".to_string(), report.element_count.to_string()],
        vec!["height".into(), report.height.to_string()],
        vec!["minimal".into(), report.minimal_elements.join(" ")],
        vec!["maximal".into(), report.maximal_elements.join(" ")],
        vec!["chain".into(), report.longest_chain.join(" < ")],
    ];
    if let Some(agrees) = oracle {
        rows.push(vec![
            "oracle".into(),
            if agrees { "agrees" } else { "DISAGREES" }.into(),
        ]);
    }
    out!("{}", text::table(&rows));
}

pub fn lattice(
    file: &Path,
    act_name: &str,
    kind: LatticeKind,
    dot: Option<&Path>,
    oracle: bool,
    json: bool,
) -> Outcome {
    let (_, ws) = load(file)?;
    let act = find_act(&ws, act_name)?;
    let (report, agrees, diagram) = match kind {
        LatticeKind::Congruences => {
            let cons = all_congruences(&act, Method::Saturate)?;
            let agrees = if oracle {
                Some(all_congruences(&act, Method::Oracle)? == cons)
            } else {
                None
            };
            (
                chain_report(&cons)?,
                agrees,
                dot.map(|_| lattice_dot(act_name, &cons)),
            )
        }
        LatticeKind::Subacts => {
            let subs = all_subacts(&act)?;
            let agrees = if oracle {
                let brute = all_subacts_oracle(&act)?;
                Some(
                    brute.len() == subs.len()
                        && brute
                            .iter()
                            .zip(&subs)
                            .all(|(a, b)| a.elements() == b.elements()),
                )
            } else {
                None
            };
            (
                chain_report(&subs)?,
                agrees,
                dot.map(|_| lattice_dot(act_name, &subs)),
            )
        }
    };
    if let (Some(path), Some(d)) = (dot, diagram) {
        std::fs::write(path, d)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let kind_name = match kind {
        LatticeKind::Congruences => "congruences",
        LatticeKind::Subacts => "subacts",
    };
    if json {
        print_json(
            &json!({ "act": act_name, "kind": kind_name, "report": report, "oracle_agrees": agrees }),
        );
    } else {
        print_lattice(&report, agrees);
    }
    match agrees {
        Some(false) => Err(Failure::Rejected("oracle enumeration disagrees".into())),
        _ => Ok(()),
    }
}

pub fn quotient(
    file: &Path,
    act_name: &str,
    subact: Option<&str>,
    congruence: Option<&str>,
    name: Option<String>,
) -> Outcome {
    let (raw, ws) = load(file)?;
    let act = find_act(&ws, act_name)?;
    let (q, hom, collapsed) = match (subact, congruence) {
        (Some(elems), _) => {
            let elems = text::elements(elems).map_err(Failure::Usage)?;
            let sub = Subact::new(&act, elems)?;
            let (q, hom) = rees_quotient(&act, &sub)?;
            (q, hom, json!({ "subact": sub.elements() }))
        }
        (None, Some(blocks)) => {
            let blocks = text::blocks(blocks).map_err(Failure::Usage)?;
            let rho = Congruence::from_blocks(&act, &blocks)?;
            let (q, hom) = rho.quotient();
            (q, hom, json!({ "congruence": rho.to_string() }))
        }
        (None, None) => return Err(Failure::Usage("give --subact or --congruence".into())),
    };
    let out_name = name.unwrap_or_else(|| format!("{act_name}_quotient"));
    let mut out = WorkspaceFile::default();
    let monoid = match &raw.acts[act_name].monoid {
        MonoidRef::Name(m) => {
            out.monoids.insert(m.clone(), raw.monoids[m].clone());
            MonoidRef::Name(m.clone())
        }
        inline @ MonoidRef::Inline(_) => inline.clone(),
    };
    out.acts.insert(
        out_name,
        ActDef {
            monoid,
            body: ActTable::from(q.as_ref()),
        },
    );
    let mut meta = json!({ "source_act": act_name, "projection": hom.map() });
    if let (Value::Object(m), Value::Object(c)) = (&mut meta, collapsed) {
        m.extend(c);
    }
    out.metadata = meta;
    outln!("{}", out.to_json());
    Ok(())
}

#[derive(Serialize)]
struct Component {
    elements: Vec<usize>,
    simple: bool,
    theta_simple: bool,
}

pub fn decompose(file: &Path, act_name: &str, mode: DecomposeMode, json: bool) -> Outcome {
    let (_, ws) = load(file)?;
    let act = find_act(&ws, act_name)?;
    let parts = match mode {
        DecomposeMode::Plain => decompose_indecomposable(&act),
        DecomposeMode::Zero => zero_decomposition(&act)?,
    };
    let mut components = Vec::with_capacity(parts.len());
    for p in &parts {
        let piece = Arc::new(p.to_act().0);
        components.push(Component {
            elements: p.elements().to_vec(),
            simple: all_subacts(&piece)?.len() == 1,
            theta_simple: is_theta_simple(&piece)?,
        });
    }
    let semisimple = match act.monoid().zero() {
        Some(_) => Some(is_semisimple(&act)?),
        None => None,
    };
    let completely_reducible = is_completely_reducible(&act)?;
    if json {
        print_json(&json!({
            "act": act_name,
            "mode": match mode { DecomposeMode::Plain => "plain", DecomposeMode::Zero => "zero" },
            "components": components,
            "semisimple": semisimple,
            "completely_reducible": completely_reducible,
        }));
    } else {
        let mut rows = vec![vec![
            "component".to_string(),
            "elements".into(),
            "properties".into(),
        ]];
        for (i, c) in components.iter().enumerate() {
            rows.push(vec![
                i.to_string(),
                format_set(&c.elements),
                text::flags(&[("simple", c.simple), ("theta-simple", c.theta_simple)]),
            ]);
        }
        out!("{}", text::table(&rows));
        outln!("completely reducible: {}", yes(completely_reducible));
        match semisimple {
            Some(s) => outln!("semisimple: {}", yes(s)),
            None => outln!("semisimple: n/a (monoid has no zero)"),
        }
    }
    Ok(())
}

pub fn fitting(file: &Path, act_name: &str, endo: &str) -> Outcome {
    let (_, ws) = load(file)?;
    let act = find_act(&ws, act_name)?;
    let map = text::map(endo).map_err(Failure::Usage)?;
    let f = ActHom::new(Arc::clone(&act), Arc::clone(&act), map)?;
    print_json(&fitting_analysis(&act, &f)?);
    Ok(())
}

#[derive(Serialize)]
struct Step {
    lower: Vec<usize>,
    upper: Vec<usize>,
    factor_size: usize,
    factor_zero: Option<usize>,
    exact: bool,
    factor_table: Vec<Vec<usize>>,
}

pub fn series(file: &Path, act_name: &str, chain: &str, json: bool) -> Outcome {
    let (_, ws) = load(file)?;
    let act = find_act(&ws, act_name)?;
    let chain = text::chain(chain).map_err(Failure::Usage)?;
    let steps: Vec<Step> = series_report(&act, &chain)?
        .iter()
        .zip(chain.windows(2))
        .map(|(s, pair)| Step {
            lower: pair[0].clone(),
            upper: pair[1].clone(),
            factor_size: s.factor.size(),
            factor_zero: s.factor.zero(),
            exact: verify_rees_ses(s.ses.f(), s.ses.g()).holds,
            factor_table: s.factor.rows(),
        })
        .collect();
    let all_exact = steps.iter().all(|s| s.exact);
    if json {
        print_json(&json!({ "act": act_name, "steps": steps, "all_exact": all_exact }));
    } else {
        let mut rows = vec![vec![
            "lower".to_string(),
            "upper".into(),
            "factor".into(),
            "exact".into(),
        ]];
        for s in &steps {
            rows.push(vec![
                format_set(&s.lower),
                format_set(&s.upper),
                s.factor_size.to_string(),
                yes(s.exact).into(),
            ]);
        }
        out!("{}", text::table(&rows));
    }
    if all_exact {
        Ok(())
    } else {
        Err(Failure::Rejected(
            "a step is not an exact Rees sequence".into(),
        ))
    }
}

pub fn verify(
    suite: &str,
    config: &SuiteConfig,
    replay_file: Option<&Path>,
    out: Option<&Path>,
    json: bool,
) -> Outcome {
    let report = match replay_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let file: ReplayFile = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("bad replay file: {e}")))?;
            replay(suite, &file.instances())?
        }
        None => verify_suite(suite, config)?,
    };
    let payload = sact_core::io::to_pretty_json(&report);
    if let Some(path) = out {
        std::fs::write(path, format!("{payload}\n"))
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if json {
        outln!("{payload}");
    } else {
        let rows = vec![
            vec!["suite".to_string(), report.suite.clone()],
            vec!["seed".into(), report.seed.to_string()],
            vec!["instances".into(), report.instances_tested.to_string()],
            vec!["checks".into(), report.checks.to_string()],
            vec!["failures".into(), report.failures.len().to_string()],
            vec![
                "result".into(),
                if report.passed { "passed" } else { "FAILED" }.into(),
            ],
        ];
        out!("{}", text::table(&rows));
        for f in &report.failures {
            outln!("  {}: {}", f.instance.label, f.detail);
        }
        for n in &report.notes {
            outln!("note: {n}");
        }
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Rejected(format!(
            "suite `{suite}` found {} counterexample(s)",
            report.failures.len()
        )))
    }
}

pub fn generate(kind: GenKind, config: &RandomConfig) -> Outcome {
    let mut out = WorkspaceFile::default();
    match kind {
        GenKind::Monoid => {
            let m = random_monoid(config)?;
            out.add_monoid("M", &m);
        }
        GenKind::Act => {
            let (m, a) = random_act(config)?;
            out.add_monoid("M", &m);
            out.add_act("A", "M", &a);
        }
    }
    out.metadata = json!({ "generator": config });
    outln!("{}", out.to_json());
    Ok(())
}

pub fn builtin(family: Family, n: usize) -> Outcome {
    match family {
        Family::MinMonoid => {
            if n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let (s, k) = min_family_act(n);
            let mut out = WorkspaceFile::default();
            out.add_monoid("S", &s);
            out.add_act("K", "S", &k);
            out.metadata = json!({
                "family": "min-monoid",
                "n": n,
                "monoid": "index 0 is the adjoined identity, index i is the integer i under min",
                "act": "K = {1..n}; act element i-1 stands for the integer i",
            });
            outln!("{}", out.to_json());
        }
    }
    Ok(())
}
