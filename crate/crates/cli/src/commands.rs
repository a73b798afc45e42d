//! Subcommand bodies. Each returns its text and JSON renderings; `main`
//! picks one.

use std::fmt::Write as _;

use ck_spectra::format::{self, SCHEMA};
use ck_spectra::ideals::{self, AdmissiblePair, IdealClass};
use ck_spectra::tails;
use ck_spectra::topology::{self, PointSet, SpecPoint};
use ck_spectra::{Graph, Side, SpecSpace, VerifyOptions, VertexSet};
use serde::Serialize;
use serde_json::{json, Value};

use crate::CliError;

pub struct Context {
    pub verbose: bool,
}

pub struct Output {
    pub text: String,
    pub json: Value,
    pub exit: u8,
}

impl Output {
    fn ok(text: String, command: &str, body: Value) -> Self {
        Output {
            text,
            json: envelope(command, body),
            exit: 0,
        }
    }
}

fn envelope(command: &str, mut body: Value) -> Value {
    if let Value::Object(map) = &mut body {
        map.insert("schema".into(), json!(SCHEMA));
        map.insert("command".into(), json!(command));
    }
    body
}

fn names(g: &Graph, s: VertexSet) -> Vec<&str> {
    s.iter().map(|v| g.name(v)).collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn class_name(g: &Graph, c: IdealClass) -> String {
    match c {
        IdealClass::Primitive2a => "primitive (maximal tail)".into(),
        IdealClass::Primitive2b(v) => format!("primitive (finite return at {})", g.name(v)),
        IdealClass::PrimeNotPrimitive => "prime, not primitive".into(),
        IdealClass::NotPrime => "not prime".into(),
    }
}

fn class_json(g: &Graph, c: IdealClass) -> Value {
    match c {
        IdealClass::Primitive2a => json!({"class": "Primitive2a"}),
        IdealClass::Primitive2b(v) => json!({"class": "Primitive2b", "vertex": g.name(v)}),
        IdealClass::PrimeNotPrimitive => json!({"class": "PrimeNotPrimitive"}),
        IdealClass::NotPrime => json!({"class": "NotPrime"}),
    }
}

fn pair_json(g: &Graph, p: &AdmissiblePair) -> Value {
    json!({"H": names(g, p.h()), "S": names(g, p.s())})
}

fn point_json(g: &Graph, label: &str, p: SpecPoint) -> Value {
    match p {
        SpecPoint::Cluster(c) => {
            json!({"label": label, "kind": "cluster", "vertices": names(g, c)})
        }
        SpecPoint::FiniteReturn(v) => json!({
            "label": label,
            "kind": "finite-return",
            "vertex": g.name(v),
            "vertices": names(g, g.upward_of(v)),
        }),
    }
}

fn fmt_points(labels: &[String], s: &PointSet) -> String {
    let items: Vec<&str> = s.ones().map(|i| labels[i].as_str()).collect();
    format!("{{{}}}", items.join(", "))
}

fn point_names(labels: &[String], s: &PointSet) -> Vec<String> {
    s.ones().map(|i| labels[i].clone()).collect()
}

pub fn check(_ctx: &Context, g: &Graph) -> Result<Output, CliError> {
    let classes = g.classify_vertices();
    let k = g.condition_k_violation();
    let l = g.condition_l_violation();
    let dir = g.directedness_violation(g.all(), Default::default());
    let (csp, witness) = g.has_csp(g.all());

    let mut t = String::new();
    writeln!(
        t,
        "vertices: {}  bundles: {}",
        g.vertex_count(),
        g.bundles().len()
    )
    .unwrap();
    writeln!(t, "sinks: {}", g.fmt_set(classes.sinks)).unwrap();
    writeln!(
        t,
        "infinite emitters: {}",
        g.fmt_set(classes.infinite_emitters)
    )
    .unwrap();
    writeln!(t, "regular: {}", g.fmt_set(classes.regular)).unwrap();
    match k {
        None => writeln!(t, "condition (K): holds").unwrap(),
        Some(v) => writeln!(
            t,
            "condition (K): fails at {} (exactly one simple cycle)",
            g.name(v)
        )
        .unwrap(),
    }
    match &l {
        None => writeln!(t, "condition (L): holds").unwrap(),
        Some(c) => {
            let cyc: Vec<&str> = c.vertices.iter().map(|&v| g.name(v)).collect();
            writeln!(
                t,
                "condition (L): fails on exitless cycle {}",
                cyc.join(" -> ")
            )
            .unwrap()
        }
    }
    match dir {
        None => writeln!(t, "downward directed: yes").unwrap(),
        Some((u, v)) => writeln!(
            t,
            "downward directed: no ({} and {} have no common lower bound)",
            g.name(u),
            g.name(v)
        )
        .unwrap(),
    }
    writeln!(
        t,
        "countable separation: {} (witness {})",
        yes_no(csp),
        g.fmt_set(witness)
    )
    .unwrap();

    let body = json!({
        "vertices": g.vertex_count(),
        "bundles": g.bundles().len(),
        "sinks": names(g, classes.sinks),
        "infinite_emitters": names(g, classes.infinite_emitters),
        "regular": names(g, classes.regular),
        "condition_k": k.is_none(),
        "condition_k_violation": k.map(|v| g.name(v)),
        "condition_l": l.is_none(),
        "exitless_cycle": l.map(|c| c.vertices.iter().map(|&v| g.name(v)).collect::<Vec<_>>()),
        "downward_directed": dir.is_none(),
        "directedness_violation": dir.map(|(u, v)| [g.name(u), g.name(v)]),
        "csp": csp,
        "csp_witness": names(g, witness),
    });
    Ok(Output::ok(t, "check", body))
}

fn mt_json(g: &Graph, r: &tails::MtReport) -> Value {
    json!({
        "mt1": r.mt1(),
        "mt2": r.mt2(),
        "mt3": r.mt3(),
        "mt4": r.mt4(),
        "mt4_witness": names(g, r.mt4_witness),
    })
}

fn mt_text(g: &Graph, r: &tails::MtReport) -> String {
    let mark = |b: bool| if b { "ok" } else { "FAIL" };
    format!(
        "MT1 {} MT2 {} MT3 {} MT4 {} (witness {})",
        mark(r.mt1()),
        mark(r.mt2()),
        mark(r.mt3()),
        mark(r.mt4()),
        g.fmt_set(r.mt4_witness)
    )
}

pub fn tails(ctx: &Context, g: &Graph) -> Result<Output, CliError> {
    let maximal = tails::maximal_tails(g)?;
    let clusters = tails::clusters(g)?;
    let fr = tails::finite_return_vertices(g);

    let mut t = String::new();
    let mut tails_json = Vec::new();
    writeln!(t, "maximal tails ({}):", maximal.len()).unwrap();
    for &w in &maximal {
        let r = tails::mt_report(g, w)?;
        let path = tails::realize_as_tail(g, w)?;
        writeln!(t, "  {}  {}", g.fmt_set(w), mt_text(g, &r)).unwrap();
        writeln!(t, "    boundary path: {}", path.describe(g)).unwrap();
        tails_json.push(json!({
            "vertices": names(g, w),
            "mt": mt_json(g, &r),
            "boundary_path": path.describe(g),
        }));
    }
    let mut clusters_json = Vec::new();
    writeln!(t, "clusters ({}):", clusters.len()).unwrap();
    for &w in &clusters {
        let is_tail = maximal.contains(&w);
        writeln!(
            t,
            "  {}{}",
            g.fmt_set(w),
            if is_tail {
                ""
            } else {
                "  (not a maximal tail)"
            }
        )
        .unwrap();
        clusters_json.push(json!({"vertices": names(g, w), "maximal_tail": is_tail}));
    }
    let mut fr_json = Vec::new();
    writeln!(t, "finite-return vertices: {}", g.fmt_set(fr)).unwrap();
    for v in fr {
        let count = tails::return_edge_count(g, v);
        writeln!(
            t,
            "  {}: {} returning edges, U({}) = {}",
            g.name(v),
            count,
            g.name(v),
            g.fmt_set(g.upward_of(v))
        )
        .unwrap();
        fr_json.push(json!({
            "vertex": g.name(v),
            "returning_edges": format::multiplicity_json(count),
            "upward": names(g, g.upward_of(v)),
        }));
    }
    if ctx.verbose {
        writeln!(
            t,
            "note: the empty set satisfies MT1-MT4 vacuously and is not listed"
        )
        .unwrap();
    }
    let body = json!({
        "maximal_tails": tails_json,
        "clusters": clusters_json,
        "finite_return": fr_json,
    });
    Ok(Output::ok(t, "tails", body))
}

pub fn ideals(ctx: &Context, g: &Graph) -> Result<Output, CliError> {
    let pairs = ideals::admissible_pairs(g)?;
    let mut rows = Vec::new();
    for p in &pairs {
        rows.push((p, ideals::classify_ideal(g, p)?));
    }
    let h_col = rows
        .iter()
        .map(|(p, _)| g.fmt_set(p.h()).chars().count())
        .max()
        .unwrap_or(1)
        .max(1);
    let s_col = rows
        .iter()
        .map(|(p, _)| g.fmt_set(p.s()).chars().count())
        .max()
        .unwrap_or(1)
        .max(1);

    let mut t = String::new();
    writeln!(t, "admissible pairs: {}", pairs.len()).unwrap();
    writeln!(t, "{:<h_col$}  {:<s_col$}  class", "H", "S").unwrap();
    let mut json_rows = Vec::new();
    for (p, c) in &rows {
        writeln!(
            t,
            "{:<h_col$}  {:<s_col$}  {}",
            g.fmt_set(p.h()),
            g.fmt_set(p.s()),
            class_name(g, *c)
        )
        .unwrap();
        let mut row = pair_json(g, p);
        row["classification"] = class_json(g, *c);
        json_rows.push(row);
    }
    let prime = rows.iter().filter(|(_, c)| c.is_prime()).count();
    let primitive = rows.iter().filter(|(_, c)| c.is_primitive()).count();
    writeln!(t, "prime: {prime}  primitive: {primitive}").unwrap();
    if ctx.verbose {
        writeln!(
            t,
            "note: (E0, {{}}) is the whole algebra and is never prime"
        )
        .unwrap();
    }
    let body = json!({
        "pairs": json_rows,
        "prime": prime,
        "primitive": primitive,
    });
    Ok(Output::ok(t, "ideals", body))
}

fn parse_set(g: &Graph, items: &[String]) -> Result<VertexSet, CliError> {
    let trimmed = items.iter().map(|s| s.trim()).filter(|s| !s.is_empty());
    Ok(g.set(trimmed)?)
}

pub fn quotient(_ctx: &Context, g: &Graph, h: &[String], s: &[String]) -> Result<Output, CliError> {
    let pair = AdmissiblePair::new(g, parse_set(g, h)?, parse_set(g, s)?)?;
    let q = ideals::quotient_graph(g, &pair)?;
    let qg = &q.graph;

    let mut t = String::new();
    writeln!(t, "quotient by {}", pair.display(g)).unwrap();
    writeln!(t, "vertices: {}", g_names_joined(qg, qg.all())).unwrap();
    for b in qg.bundles() {
        let label = b
            .label
            .as_deref()
            .map(|l| format!("{l}: "))
            .unwrap_or_default();
        let mult = if b.mult == 1.into() {
            String::new()
        } else {
            format!(" ×{}", b.mult)
        };
        writeln!(t, "  {label}{} -> {}{mult}", qg.name(b.src), qg.name(b.dst)).unwrap();
    }
    let primed: Vec<(String, String)> = q
        .primed
        .iter()
        .map(|&(v, p)| (g.name(v).to_string(), qg.name(p).to_string()))
        .collect();
    if !primed.is_empty() {
        let list: Vec<String> = primed.iter().map(|(v, p)| format!("{v} -> {p}")).collect();
        writeln!(t, "primed sinks: {}", list.join(", ")).unwrap();
    }
    writeln!(t, "condition (L): {}", yes_no(qg.condition_l())).unwrap();
    writeln!(
        t,
        "downward directed: {}",
        yes_no(qg.is_downward_directed(qg.all()))
    )
    .unwrap();

    let mut graph = format::graph_to_json(qg);
    if let Value::Object(map) = &mut graph {
        map.remove("schema");
    }
    let body = json!({
        "pair": pair_json(g, &pair),
        "graph": graph,
        "primed": primed.iter().map(|(v, p)| json!({"vertex": v, "copy": p})).collect::<Vec<_>>(),
        "condition_l": qg.condition_l(),
        "downward_directed": qg.is_downward_directed(qg.all()),
    });
    Ok(Output::ok(t, "quotient", body))
}

fn g_names_joined(g: &Graph, s: VertexSet) -> String {
    names(g, s).join(", ")
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::GraphSide => "graph",
        Side::IdealSide => "ideal",
        Side::RefinedGraphSide => "refined",
    }
}

fn build_space(g: &Graph, prim: bool, side: Side) -> Result<SpecSpace, CliError> {
    Ok(if prim {
        SpecSpace::prim(g, side)?
    } else {
        SpecSpace::spec(g, side)?
    })
}

pub fn space(_ctx: &Context, g: &Graph, prim: bool, side: Side) -> Result<Output, CliError> {
    let command = if prim { "prim" } else { "spec" };
    let sp = build_space(g, prim, side)?;
    let labels = sp.labels();
    let sep = topology::separation_report(&sp);

    let mut t = String::new();
    writeln!(
        t,
        "{} points: {} ({} closure)",
        command,
        sp.len(),
        side_name(side)
    )
    .unwrap();
    let mut points_json = Vec::new();
    for (i, (&p, pair)) in sp.points.iter().zip(sp.ideals()).enumerate() {
        let vs = topology::v_of(g, [&p]);
        let closure: PointSet = sp.closure(&sp.singleton(i));
        writeln!(
            t,
            "  {:<6} {}  ideal {}  closure {}",
            labels[i],
            g.fmt_set(vs),
            pair.display(g),
            fmt_points(&labels, &closure)
        )
        .unwrap();
        let mut pj = point_json(g, &labels[i], p);
        pj["ideal"] = pair_json(g, pair);
        pj["closure"] = json!(point_names(&labels, &closure));
        points_json.push(pj);
    }
    let non_closed: Vec<&str> = sep
        .non_closed_singletons
        .iter()
        .map(|&i| labels[i].as_str())
        .collect();
    writeln!(t, "non-closed singletons: {{{}}}", non_closed.join(", ")).unwrap();
    writeln!(t, "specialization (p ~> q when q is in the closure of p):").unwrap();
    for (p, cl) in sep.specialization.iter().enumerate() {
        for &q in cl.iter().filter(|&&q| q != p) {
            writeln!(t, "  {} ~> {}", labels[p], labels[q]).unwrap();
        }
    }
    writeln!(
        t,
        "T0: {}  T1: {}  Hausdorff: {}  discrete: {}",
        yes_no(sep.t0),
        yes_no(sep.t1),
        yes_no(sep.hausdorff),
        yes_no(sep.discrete)
    )
    .unwrap();

    let specialization: Vec<[&str; 2]> = sep
        .specialization
        .iter()
        .enumerate()
        .flat_map(|(p, cl)| cl.iter().filter(move |&&q| q != p).map(move |&q| [p, q]))
        .map(|[p, q]| [labels[p].as_str(), labels[q].as_str()])
        .collect();
    let body = json!({
        "side": side_name(side),
        "points": points_json,
        "non_closed_singletons": non_closed,
        "specialization": specialization,
        "t0": sep.t0,
        "t1": sep.t1,
        "hausdorff": sep.hausdorff,
        "discrete": sep.discrete,
    });
    Ok(Output::ok(t, command, body))
}

fn resolve_points(labels: &[String], wanted: &[String]) -> Result<PointSet, CliError> {
    let mut set = PointSet::with_capacity(labels.len());
    for w in wanted.iter().map(|w| w.trim()).filter(|w| !w.is_empty()) {
        match labels.iter().position(|l| l == w) {
            Some(i) => set.insert(i),
            None => {
                return Err(CliError::Usage(format!(
                    "unknown point `{w}`; points are {}",
                    labels.join(", ")
                )))
            }
        }
    }
    Ok(set)
}

/// Closes the chosen points under every operator. Exits 1 when the
/// plain graph-side closure disagrees with the ideal side.
pub fn closure(
    _ctx: &Context,
    g: &Graph,
    wanted: &[String],
    prim: bool,
) -> Result<Output, CliError> {
    let ideal = build_space(g, prim, Side::IdealSide)?;
    let labels = ideal.labels();
    let x = resolve_points(&labels, wanted)?;
    let on = |side| SpecSpace::new(g, ideal.points.clone(), side).closure(&x);
    let graph_cl = on(Side::GraphSide);
    let refined_cl = on(Side::RefinedGraphSide);
    let ideal_cl = ideal.closure(&x);
    let agree = graph_cl == ideal_cl;

    let mut t = String::new();
    writeln!(t, "X = {}", fmt_points(&labels, &x)).unwrap();
    writeln!(
        t,
        "graph side:   {} ({} points)",
        fmt_points(&labels, &graph_cl),
        graph_cl.count_ones(..)
    )
    .unwrap();
    writeln!(
        t,
        "ideal side:   {} ({} points)",
        fmt_points(&labels, &ideal_cl),
        ideal_cl.count_ones(..)
    )
    .unwrap();
    writeln!(
        t,
        "refined side: {} ({} points)",
        fmt_points(&labels, &refined_cl),
        refined_cl.count_ones(..)
    )
    .unwrap();
    writeln!(t, "agree: {}", yes_no(agree)).unwrap();

    let body = json!({
        "space": if prim { "prim" } else { "spec" },
        "points": point_names(&labels, &x),
        "graph": point_names(&labels, &graph_cl),
        "ideal": point_names(&labels, &ideal_cl),
        "refined": point_names(&labels, &refined_cl),
        "agree": agree,
        "refined_agree": refined_cl == ideal_cl,
    });
    let mut out = Output::ok(t, "closure", body);
    out.exit = if agree { 0 } else { 1 };
    Ok(out)
}

#[derive(Serialize)]
struct CheckResult {
    name: &'static str,
    pass: bool,
    detail: String,
}

struct Suite {
    results: Vec<CheckResult>,
}

fn pair_fail(g: &Graph, what: &str, p: &AdmissiblePair) -> String {
    format!("{what} at {}", p.display(g))
}

impl Suite {
    fn record(&mut self, name: &'static str, outcome: Result<String, String>) {
        let (pass, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.results.push(CheckResult { name, pass, detail });
    }
}

fn engine(e: ck_spectra::Error) -> String {
    e.to_string()
}

/// The full property suite. A Condition (K) failure is a precondition
/// error; every other failed property is reported and yields exit 1.
pub fn verify(ctx: &Context, g: &Graph, opts: &VerifyOptions) -> Result<Output, CliError> {
    if let Some(v) = g.condition_k_violation() {
        return Err(ck_spectra::Error::ConditionKRequired(g.name(v).to_string()).into());
    }
    g.check_enumerable()?;
    let pairs = ideals::admissible_pairs(g)?;
    let mut suite = Suite {
        results: Vec::new(),
    };

    suite.record("classifiers agree", {
        let mut out = Ok(format!("{} pairs", pairs.len()));
        for p in &pairs {
            let a = ideals::classify_ideal(g, p)?;
            let b = ideals::classify_via_quotient(g, p)?;
            if a != b {
                out = Err(format!(
                    "{}: {} by tails, {} by quotient",
                    p.display(g),
                    class_name(g, a),
                    class_name(g, b)
                ));
                break;
            }
        }
        out
    });

    suite.record("every prime ideal is primitive", {
        let mut out = Ok(String::new());
        for p in &pairs {
            if ideals::classify_ideal(g, p)? == IdealClass::PrimeNotPrimitive {
                out = Err(pair_fail(g, "prime but not primitive", p));
                break;
            }
        }
        out
    });

    let maximal = tails::maximal_tails(g)?;
    let clusters = tails::clusters(g)?;
    suite.record(
        "maximal tails are the clusters",
        if maximal == clusters {
            Ok(format!("{} tails", maximal.len()))
        } else {
            let extra: Vec<String> = clusters
                .iter()
                .filter(|c| !maximal.contains(c))
                .map(|&c| g.fmt_set(c))
                .collect();
            Err(format!(
                "clusters that are not maximal tails: {}",
                extra.join(" ")
            ))
        },
    );

    suite.record("tails round-trip through boundary paths", {
        let mut out = Ok(String::new());
        for &w in &clusters {
            let back = tails::realize_as_tail(g, w).and_then(|p| tails::tail_of_boundary(g, &p))?;
            if back != w {
                out = Err(format!("{} came back as {}", g.fmt_set(w), g.fmt_set(back)));
                break;
            }
        }
        out
    });

    suite.record("complements satisfy MT1 and MT2", {
        let mut out = Ok(String::new());
        for p in &pairs {
            let r = tails::mt_report(g, g.all() - p.h())?;
            if !(r.mt1() && r.mt2()) {
                out = Err(pair_fail(g, "MT1 or MT2 fails", p));
                break;
            }
        }
        out
    });

    suite.record("finite return iff breaking for the complement of U(v)", {
        let fr = tails::finite_return_vertices(g);
        let mut out = Ok(format!("FR = {}", g.fmt_set(fr)));
        for v in g.infinite_emitters() {
            let h = g.all() - g.upward_of(v);
            let breaking = ideals::breaking_vertices(g, h)?;
            if fr.contains(v) != breaking.contains(v) {
                out = Err(format!("vertex {}", g.name(v)));
                break;
            }
        }
        out
    });

    suite.record("containment matches H and S inclusion", {
        let mut out = Ok(String::new());
        'outer: for p in &pairs {
            for q in &pairs {
                let direct = p.h().is_subset(q.h()) && p.s().is_subset(q.h() | q.s());
                if ideals::ideal_leq(g, p, q) != direct {
                    out = Err(format!("{} vs {}", p.display(g), q.display(g)));
                    break 'outer;
                }
            }
        }
        out
    });

    suite.record("every quotient satisfies (L)", {
        let mut out = Ok(String::new());
        for p in &pairs {
            if !ideals::quotient_graph(g, p)?.graph.condition_l() {
                out = Err(pair_fail(g, "exitless cycle", p));
                break;
            }
        }
        out
    });

    for (name, side) in [
        ("closure axioms (graph side)", Side::GraphSide),
        ("closure axioms (ideal side)", Side::IdealSide),
        (
            "closure axioms (refined graph side)",
            Side::RefinedGraphSide,
        ),
    ] {
        let mut outcome = Ok(String::new());
        for prim in [false, true] {
            let sp = build_space(g, prim, side)?;
            let (subsets, _) = topology::test_subsets(sp.len(), opts);
            if let Err(e) = topology::check_kuratowski(&sp, &subsets) {
                outcome = Err(engine(e));
                break;
            }
        }
        suite.record(name, outcome);
    }

    for (name, side) in [
        ("homeomorphism (graph closure)", Side::GraphSide),
        (
            "homeomorphism (refined graph closure)",
            Side::RefinedGraphSide,
        ),
    ] {
        let o = VerifyOptions {
            graph_side: side,
            ..*opts
        };
        suite.record(
            name,
            match topology::verify_homeomorphism(g, &o) {
                Ok(r) => Ok(format!(
                    "{} spec and {} prim subsets, {}",
                    r.spec_subsets_checked,
                    r.prim_subsets_checked,
                    if r.exhaustive {
                        "exhaustive"
                    } else {
                        "sampled"
                    }
                )),
                Err(ck_spectra::Error::VerificationFailure(m)) => Err(m),
                Err(e) => return Err(e.into()),
            },
        );
    }

    suite.record(
        "Prim is dense in Spec",
        match topology::prim_spec_density_check(g) {
            Ok(r) if r.dense => Ok(format!(
                "{} prime, {} primitive",
                r.spec_points, r.prim_points
            )),
            Ok(_) => Err("closure of Prim is not Spec".into()),
            Err(ck_spectra::Error::VerificationFailure(m)) => Err(m),
            Err(e) => return Err(e.into()),
        },
    );

    let failed = suite.results.iter().filter(|r| !r.pass).count();
    let mut t = String::new();
    for r in &suite.results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        if r.detail.is_empty() || (r.pass && !ctx.verbose) {
            writeln!(t, "{status} {}", r.name).unwrap();
        } else {
            writeln!(t, "{status} {}: {}", r.name, r.detail).unwrap();
        }
    }
    writeln!(t, "{} checks, {} failed", suite.results.len(), failed).unwrap();
    let body = json!({
        "checks": suite.results,
        "failed": failed,
        "seed": opts.seed,
        "samples": opts.samples,
        "exhaustive_limit": opts.exhaustive_limit,
    });
    let mut out = Output::ok(t, "verify", body);
    out.exit = if failed == 0 { 0 } else { 1 };
    Ok(out)
}

pub fn gen(g: Graph) -> Result<Output, CliError> {
    if !format::is_emittable(&g) {
        return Err(CliError::Usage(
            "generated graph has names the text format cannot express".into(),
        ));
    }
    let text = format::emit_graph(&g);
    let body = format::graph_to_json(&g);
    Ok(Output {
        text,
        json: envelope("gen", body),
        exit: 0,
    })
}

pub fn export(g: &Graph, as_json: bool) -> Result<Output, CliError> {
    let json = format::graph_to_json(g);
    let text = if as_json {
        let mut s = serde_json::to_string_pretty(&json).expect("serializable");
        s.push('\n');
        s
    } else {
        format::emit_dot(g)
    };
    Ok(Output {
        text,
        json: envelope("export", json),
        exit: 0,
    })
}
