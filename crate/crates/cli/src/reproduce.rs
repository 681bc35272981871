use anyhow::Result;
use clap::Args;
use serde::Serialize;

use lossy_gossip::detour::{self, six_parameter_forms, six_parameter_graph};
use lossy_gossip::error::Error;
use lossy_gossip::fan::{closure_sample_check, enumerate_spans, orbit_classify, pq_example_check, GossipFan};
use lossy_gossip::gossip::{
    construct_pessimal, element_length, enumerate_monoid, longest_random_pessimal, max_irredundant_length,
    verify_pessimal, EnumerationOptions, GossipState, SearchOptions,
};
use lossy_gossip::groups;
use lossy_gossip::poly::PolyCone;
use lossy_gossip::trop::{self, TropMatrix, TropScalar};

use crate::commands::binom2;
use crate::published;
use crate::report::{Report, Status};

#[derive(Args)]
pub struct Options {
    /// Skip the six-gossiper rows and use fewer random samples.
    #[arg(long)]
    pub quick: bool,
    /// Also enumerate the monoid for seven gossipers (several GiB of memory).
    #[arg(long)]
    pub include_n7: bool,
    /// Also search the longest irredundant product for six gossipers.
    #[arg(long)]
    pub include_l6: bool,
    /// Seed for every randomized check.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Memory budget in bytes for monoid enumeration.
    #[arg(long, default_value_t = 8 << 30)]
    pub memory_budget: u64,
}

#[derive(Serialize)]
struct Check {
    name: String,
    expected: String,
    computed: String,
    pass: bool,
    #[serde(skip)]
    status: Status,
}

/// A recomputed claim that disagrees with the published text but is not a
/// published number; reported without affecting the exit status.
#[derive(Serialize)]
struct Finding {
    name: String,
    claimed: String,
    computed: String,
}

#[derive(Serialize)]
struct Bundle {
    seed: u64,
    quick: bool,
    include_n7: bool,
    include_l6: bool,
    all_pass: bool,
    checks: Vec<Check>,
    findings: Vec<Finding>,
}

#[derive(Default)]
struct Checks(Vec<Check>, Vec<Finding>);

impl Checks {
    fn compare(&mut self, name: impl Into<String>, expected: impl ToString, computed: impl ToString) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let pass = expected == computed;
        self.0.push(Check { name: name.into(), expected, computed, pass, status: Status::from_check(pass) });
    }

    fn truth(&mut self, name: impl Into<String>, computed: bool) {
        self.compare(name, true, computed);
    }

    fn incomplete(&mut self, name: impl Into<String>, expected: impl ToString, why: impl ToString) {
        let (expected, computed) = (expected.to_string(), why.to_string());
        self.0.push(Check { name: name.into(), expected, computed, pass: false, status: Status::ResourceAbort });
    }

    fn finding(&mut self, name: impl Into<String>, claimed: impl ToString, computed: impl ToString) {
        self.1.push(Finding { name: name.into(), claimed: claimed.to_string(), computed: computed.to_string() });
    }

    /// Records a step that failed outright instead of dropping it.
    fn error(&mut self, name: impl Into<String>, e: Error) {
        let status = if matches!(e, Error::MemoryBudget(_)) { Status::ResourceAbort } else { Status::Mismatch };
        self.0.push(Check { name: name.into(), expected: "a result".into(), computed: e.to_string(), pass: false, status });
    }
}

fn fmt_list<T: std::fmt::Debug>(v: &[T]) -> String {
    format!("{v:?}")
}

fn monoid_rows(c: &mut Checks, opts: &Options) {
    let last = if opts.include_n7 { 7 } else if opts.quick { 5 } else { 6 };
    for n in 1..=last {
        let name = format!("monoid size and max length, n={n}");
        let expected = format!("{} / {}", published::MONOID_SIZES[n - 1], published::MONOID_MAX_LENGTHS[n - 1]);
        let eo = EnumerationOptions { allow_large: false, memory_budget_bytes: opts.memory_budget };
        match enumerate_monoid(n, &eo) {
            Ok(r) if !r.complete => c.incomplete(name, expected, format!("stopped after {} elements", r.total_count)),
            Ok(r) => c.compare(name, expected, format!("{} / {}", r.total_count, r.max_length)),
            Err(e) => c.error(name, e),
        }
    }
    for n in 2..=last.min(6) {
        let name = format!("length of the all-zero matrix, n={n}");
        match element_length(&GossipState::all_known(n)) {
            Ok(l) => c.compare(name, published::zero_matrix_length(n), l.map_or("unreachable".into(), |l| l.to_string())),
            Err(e) => c.error(name, e),
        }
    }
}

fn irredundant_rows(c: &mut Checks, opts: &Options) {
    let last = if opts.include_l6 { 6 } else { 5 };
    for n in 1..=last {
        let name = format!("longest irredundant product, n={n}");
        match max_irredundant_length(n, &SearchOptions::default()) {
            Ok(s) if !s.complete => c.incomplete(name, published::IRREDUNDANT_LENGTHS[n - 1], "search incomplete"),
            Ok(s) => {
                c.compare(name, published::IRREDUNDANT_LENGTHS[n - 1], s.length);
                c.truth(format!("irredundant length within C(n,2), n={n}"), s.length <= binom2(n));
            }
            Err(e) => c.error(name, e),
        }
    }
    for n in 1..=6 {
        let w = trop::build_w(n);
        c.compare(format!("irredundant ladder factors, n={n}"), (n + 1) * n * (n - 1) / 6, w.len());
        c.truth(format!("irredundant ladder is irredundant, n={n}"), trop::is_irredundant(&w));
    }
    for n in 1..=8 {
        let calls = construct_pessimal(n);
        c.compare(format!("pessimal chain length, n={n}"), binom2(n), calls.len());
        c.truth(format!("pessimal chain verifies, n={n}"), verify_pessimal(n, &calls));
    }
    let attempts = if opts.quick { 10_000 } else { 1_000_000 };
    for n in 2..=5 {
        let longest = longest_random_pessimal(n, attempts, opts.seed).len();
        c.truth(format!("{attempts} random informative chains stay within C(n,2), n={n}"), longest <= binom2(n));
    }
}

fn fan_rows(c: &mut Checks, opts: &Options) -> Result<(), Error> {
    for n in 2..=4 {
        let census = enumerate_spans(n, binom2(n))?;
        c.compare(format!("spans, n={n}"), published::SPAN_COUNTS[n - 2], census.spans.len());
        let orbits = orbit_classify(&census, false)?;
        c.compare(format!("orbits, n={n}"), published::ORBIT_COUNTS[n - 2], orbits.orbits.len());
        let dist: Vec<(usize, usize)> = orbits.distribution.iter().map(|(&s, &k)| (s, k)).collect();
        let expected: Vec<(usize, usize)> =
            published::ORBIT_DISTRIBUTIONS[n - 2].iter().map(|&(s, k)| (s, k)).collect();
        c.compare(format!("orbit sizes as (size, count), n={n}"), fmt_list(&expected), fmt_list(&dist));
        if n < 3 {
            continue;
        }
        if n == 4 {
            let t = orbit_classify(&census, true)?;
            c.compare("orbits with transposition, n=4", published::ORBITS_WITH_TRANSPOSE_N4, t.orbits.len());
        }
        let fan = GossipFan::from_census(&census)?;
        c.truth(format!("maximal cones form a fan, n={n}"), fan.check.is_fan);
        c.truth(format!("fan is pure, n={n}"), fan.is_pure);
        c.truth(format!("fan is connected in codimension one, n={n}"), fan.codim1_connected);
        c.truth(format!("metric cone is a maximal cone, n={n}"), fan.metric_cone.is_some());
        c.truth(format!("every span has a largest cone, n={n}"), fan.every_span_has_maximum);
        c.truth(format!("Kleene stars of fan points are metrics, n={n}"), fan.kleene_lands_in_metrics);
        if n == 4 {
            c.compare("f-vector, n=4", fmt_list(&published::F_VECTOR_N4), fmt_list(&fan.check.f_vector));
            let forms = six_parameter_forms();
            let rays: Vec<Vec<i128>> = (0..6).map(|t| forms.iter().map(|f| f[t]).collect()).collect();
            let six = PolyCone::from_generators(16, &rays)?;
            let params = [1, 2, 3, 4, 5, 6].map(int);
            let graph = six_parameter_graph(&params)?;
            let realised = detour::realize(&graph);
            let displayed = forms.iter().zip(realised.entries()).all(|(f, x)| {
                *x == int(f.iter().zip(1..=6).map(|(&c, v)| c as i64 * v).sum())
            });
            c.truth("six-parameter detour graph realises its displayed matrix", displayed);
            c.truth("six-parameter detour graph without detours realises the Kleene star", detour::kleene_compatible(&graph));
            c.compare("six-parameter cone f-vector", "[6, 15, 20, 15, 6, 1]", fmt_list(&six.f_vector()));
            let in_fan = fan.cones.iter().any(|m| m.cone == six);
            c.finding("six-parameter detour cone is a maximal cone of the fan, n=4", true, in_fan);
            c.finding("six-parameter detour matrix at parameters 1..6 lies in the fan, n=4", true, fan.locate(&realised).is_some());
        }
        let trials = if opts.quick { 1_000 } else { 10_000 };
        let r = closure_sample_check(&fan, trials, opts.seed)?;
        c.compare(format!("products escaping the fan in {trials} trials, n={n}"), 0, r.escapes);
    }
    let pq = pq_example_check(opts.seed, 20_000)?;
    c.truth("P and Q have the same span", pq.spans_equal);
    c.compare("dimension of P, Q and their intersection", "10 10 10", format!("{} {} {}", pq.p_dim, pq.q_dim, pq.intersection_dim));
    c.truth("Q's substitution and call products agree", pq.substitution_matches && pq.products_match);
    c.truth("midpoint of P and Q lies in neither", pq.witness.is_some());
    Ok(())
}

fn int(v: i64) -> TropScalar {
    TropScalar::from_int(v)
}

fn matrix(rows: &[&[i64]]) -> TropMatrix {
    TropMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).expect("square")
}

fn group_rows(c: &mut Checks, opts: &Options) -> Result<(), Error> {
    let d = groups::tdet(&matrix(&[&[1, 2], &[3, 1]]));
    c.compare("tropical determinant of [[1,2],[3,1]]", "2 x1", format!("{} x{}", d.value, d.multiplicity));
    let trials = if opts.quick { 1_000 } else { 10_000 };
    for n in 2..=3 {
        let r = groups::sl_closure_check(n, trials, opts.seed)?;
        c.compare(format!("products leaving Trop(SL) in {trials} trials, n={n}"), 0, r.failures);
    }
    let r = groups::additive_counterexample(&int(1), &int(2))?;
    c.compare("corner of the additive-group product for a=1, b=2", 3, r.product.get(0, 3));
    c.truth("additive-group product leaves the family", r.product_has_expected_shape && !r.is_member);
    for (m, expected) in [
        (matrix(&[&[0, 5], &[5, 0]]), groups::O2Cone::Gossip),
        (matrix(&[&[-2, -2], &[-2, -2]]), groups::O2Cone::Balanced),
        (matrix(&[&[1, 2], &[3, 4]]), groups::O2Cone::Outside),
    ] {
        c.compare(format!("Trop(O2) cone of {}", m.to_string().trim().replace('\n', ";")), format!("{expected:?}"), format!("{:?}", groups::o2_classify(&m)?));
    }
    let (a, b, cc, d) = (-3, -2, -1, 1);
    let m = matrix(&[&[a, a, b], &[a, a, b], &[cc, cc, d]]);
    c.truth("[[a,a,b],[a,a,b],[c,c,d]] lies in the O3 prevariety", groups::o3_prevariety_check(&m)?.satisfied);
    let m = matrix(&[&[0, 9, 2], &[5, 0, 3], &[2, 3, 0]]);
    let asym = matches!(groups::o3_nonneg_classify(&m)?.cone, groups::O3Cone::Asymmetric { .. });
    c.truth("[[0,9,2],[5,0,3],[2,3,0]] lies in the asymmetric cone of G3", asym);
    Ok(())
}

pub fn run(opts: &Options) -> Result<Report> {
    let mut c = Checks::default();
    monoid_rows(&mut c, opts);
    irredundant_rows(&mut c, opts);
    if let Err(e) = fan_rows(&mut c, opts) {
        c.error("fan computation", e);
    }
    if let Err(e) = group_rows(&mut c, opts) {
        c.error("group examples", e);
    }
    let status = c.0.iter().map(|k| k.status).max().unwrap_or(Status::Pass);
    let mut table = vec![["check", "expected", "computed", "pass"].map(String::from).to_vec()];
    table.extend(c.0.iter().map(|k| vec![k.name.clone(), k.expected.clone(), k.computed.clone(), k.pass.to_string()]));
    let mut text: String = c
        .0
        .iter()
        .map(|k| format!("{} {}: {} (expected {})\n", if k.pass { "PASS" } else { "FAIL" }, k.name, k.computed, k.expected))
        .collect();
    for f in &c.1 {
        text += &format!("NOTE {}: {} (claimed {})\n", f.name, f.computed, f.claimed);
    }
    let bundle = Bundle {
        seed: opts.seed,
        quick: opts.quick,
        include_n7: opts.include_n7,
        include_l6: opts.include_l6,
        all_pass: status == Status::Pass,
        checks: c.0,
        findings: c.1,
    };
    Ok(Report::new(&bundle)?.with_table(table).with_text(text).with_status(status))
}
