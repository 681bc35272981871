use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::json;

use lossy_gossip::detour::{self, DetourGraph};
use lossy_gossip::fan::{closure_sample_check, enumerate_spans, gossip_fan, orbit_classify, pq_example_check};
use lossy_gossip::gossip::{
    construct_pessimal, element_length, enumerate_monoid, is_irredundant_calls, longest_random_pessimal,
    max_irredundant_length, verify_pessimal, EnumerationOptions, GossipState, SearchOptions,
};
use lossy_gossip::groups;
use lossy_gossip::poly::{fan_check, PolyCone};
use lossy_gossip::trop::{self, TropMatrix};

use crate::published::{self, lookup};
use crate::report::{Report, Status};

pub fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn read_matrix(path: &Path) -> Result<TropMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?)
    } else {
        Ok(text.parse().with_context(|| format!("parsing {}", path.display()))?)
    }
}

/// Parses `0-1,1-2` into pairs.
pub fn parse_pairs(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (k, l) = p.split_once('-').ok_or_else(|| anyhow!("expected a pair like 0-1, got {p:?}"))?;
            Ok((k.trim().parse()?, l.trim().parse()?))
        })
        .collect()
}

fn matrix_report(m: &TropMatrix) -> Result<Report> {
    let rows = m.rows().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
    Ok(Report::new(m)?.with_table(rows).with_text(m.to_string()))
}

pub fn tropmul(left: &Path, right: &Path) -> Result<Report> {
    matrix_report(&read_matrix(left)?.tmul(&read_matrix(right)?)?)
}

pub fn kleene(path: &Path) -> Result<Report> {
    matrix_report(&trop::kleene_star(&read_matrix(path)?)?)
}

pub fn metric_check(path: &Path) -> Result<Report> {
    let m = read_matrix(path)?;
    let calls = trop::metric_as_calls(&m).ok();
    let round_trip = calls.as_ref().map(|c| c.product() == m);
    Report::new(&json!({ "is_metric": trop::is_metric(&m), "calls": calls, "product_matches": round_trip }))
}

pub fn core_witness(n: usize, edges: &str) -> Result<Report> {
    let edges: Vec<(usize, usize)> = parse_pairs(edges)?.into_iter().map(|(k, l)| (k.min(l), k.max(l))).collect();
    let calls = trop::core_witness(n, &edges)?;
    let product = calls.product();
    let core = trop::symmetric_core(&product);
    let matches = core == edges.iter().copied().collect::<BTreeSet<_>>();
    Ok(Report::new(&json!({ "calls": calls, "product": product, "symmetric_core": core, "matches": matches }))?
        .with_status(Status::from_check(matches)))
}

pub fn irredundant(
    n: usize,
    calls: Option<&str>,
    ladder: bool,
    allow_large: bool,
    node_limit: Option<u64>,
) -> Result<Report> {
    if let Some(calls) = calls {
        let pairs = parse_pairs(calls)?;
        let irredundant = is_irredundant_calls(n, &pairs)?;
        return Report::new(&json!({ "n": n, "calls": pairs, "irredundant": irredundant }));
    }
    if ladder {
        let w = trop::build_w(n);
        let expected = (n + 1) * n * n.saturating_sub(1) / 6;
        let irredundant = trop::is_irredundant(&w);
        let ok = irredundant && w.len() == expected;
        return Ok(Report::new(&json!({ "n": n, "factors": w.len(), "expected_factors": expected,
            "irredundant": irredundant, "calls": w }))?
        .with_status(Status::from_check(ok)));
    }
    let opts = SearchOptions { allow_large, node_limit, ..SearchOptions::default() };
    let search = max_irredundant_length(n, &opts)?;
    let published = lookup(&published::IRREDUNDANT_LENGTHS, n, 1);
    let status = if !search.complete {
        Status::ResourceAbort
    } else {
        Status::from_check(search.length <= binom2(n) && published.is_none_or(|p| p == search.length))
    };
    Ok(Report::new(&json!({ "search": search, "published": published, "bound": binom2(n) }))?.with_status(status))
}

pub fn gossip_enum(n: usize, allow_large: bool, memory_budget: u64, state: Option<&Path>) -> Result<Report> {
    if let Some(path) = state {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let s = GossipState::parse_dump(text.trim())?;
        let length = element_length(&s)?;
        return Report::new(&json!({ "n": s.n(), "state": s.dump(), "length": length }));
    }
    let report = enumerate_monoid(n, &EnumerationOptions { allow_large, memory_budget_bytes: memory_budget })?;
    let size = lookup(&published::MONOID_SIZES, n, 1);
    let max_len = lookup(&published::MONOID_MAX_LENGTHS, n, 1);
    let status = if !report.complete {
        Status::ResourceAbort
    } else {
        Status::from_check(
            size.is_none_or(|s| s == report.total_count) && max_len.is_none_or(|m| m == report.max_length),
        )
    };
    let mut table = vec![vec!["length".to_string(), "count".to_string()]];
    table.extend(report.length_histogram.iter().map(|(l, c)| vec![l.to_string(), c.to_string()]));
    Ok(Report::new(&report)?.with_table(table).with_status(status))
}

pub fn pessimal(n: usize, attempts: u64, seed: u64) -> Result<Report> {
    let calls = construct_pessimal(n);
    let verified = verify_pessimal(n, &calls);
    let longest = (attempts > 0).then(|| longest_random_pessimal(n, attempts, seed));
    let longest_len = longest.as_ref().map(Vec::len);
    let ok = verified && calls.len() == binom2(n) && longest_len.is_none_or(|l| l <= binom2(n));
    Ok(Report::new(&json!({ "n": n, "calls": calls, "length": calls.len(), "verified": verified,
        "bound": binom2(n), "attempts": attempts, "seed": seed, "longest_random": longest_len }))?
    .with_status(Status::from_check(ok)))
}

fn f_vector_status(n: usize, f: &[usize]) -> Status {
    Status::from_check(n != 4 || f == published::F_VECTOR_N4)
}

pub fn fan(n: usize, with_cones: bool) -> Result<Report> {
    let fan = gossip_fan(n)?;
    let ok = fan.check.is_fan && fan.is_pure && fan.codim1_connected && fan.metric_cone.is_some();
    let status = Status::from_check(ok).max(f_vector_status(n, &fan.check.f_vector));
    let mut value = json!({
        "n": n, "cones": fan.cones.len(), "is_fan": fan.check.is_fan, "f_vector": fan.check.f_vector,
        "is_pure": fan.is_pure, "codim1_connected": fan.codim1_connected, "metric_cone": fan.metric_cone,
        "every_span_has_maximum": fan.every_span_has_maximum,
        "kleene_lands_in_metrics": fan.kleene_lands_in_metrics,
    });
    if with_cones {
        value["cone_list"] = serde_json::to_value(&fan.cones)?;
    }
    Ok(Report::new(&value)?.with_status(status))
}

pub fn spans(n: usize, k: Option<usize>) -> Result<Report> {
    let k = k.unwrap_or(binom2(n));
    let census = enumerate_spans(n, k)?;
    let published = if k == binom2(n) { lookup(&published::SPAN_COUNTS, n, 2) } else { None };
    let every_max = census.spans.iter().all(|s| s.maximal.is_some());
    let status = Status::from_check(published.is_none_or(|p| p == census.spans.len()));
    Ok(Report::new(&json!({ "n": n, "k": k, "schemes_examined": census.schemes_examined,
        "spans": census.spans.len(), "published": published, "every_span_has_maximum": every_max }))?
    .with_status(status))
}

pub fn orbits(n: usize, transpose: bool) -> Result<Report> {
    let census = enumerate_spans(n, binom2(n))?;
    let orbits = orbit_classify(&census, transpose)?;
    let expected = if transpose {
        (n == 4).then_some(published::ORBITS_WITH_TRANSPOSE_N4)
    } else {
        lookup(&published::ORBIT_COUNTS, n, 2)
    };
    let mut ok = expected.is_none_or(|e| e == orbits.orbits.len());
    if !transpose {
        if let Some(dist) = lookup(&published::ORBIT_DISTRIBUTIONS, n, 2) {
            ok &= orbits.distribution.iter().map(|(&s, &c)| (s, c)).eq(dist.iter().copied());
        }
    }
    let mut table = vec![vec!["orbit_size".to_string(), "count".to_string()]];
    table.extend(orbits.distribution.iter().map(|(s, c)| vec![s.to_string(), c.to_string()]));
    Ok(Report::new(&json!({ "n": n, "with_transpose": transpose, "orbits": orbits.orbits.len(),
        "distribution": orbits.distribution, "published": expected }))?
    .with_table(table)
    .with_status(Status::from_check(ok)))
}

pub fn fvector(n: Option<usize>, cones: Option<&Path>) -> Result<Report> {
    let (check, status) = match (n, cones) {
        (Some(n), None) => {
            let fan = gossip_fan(n)?;
            let status = f_vector_status(n, &fan.check.f_vector);
            (fan.check, status)
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let cones: Vec<PolyCone> = serde_json::from_str(&text)?;
            (fan_check(&cones)?, Status::Pass)
        }
        _ => bail!("give exactly one of --n and --cones"),
    };
    let status = status.max(Status::from_check(check.is_fan));
    let mut table = vec![vec!["dim".to_string(), "faces".to_string()]];
    table.extend(check.f_vector.iter().enumerate().map(|(d, c)| vec![(d + 1).to_string(), c.to_string()]));
    Ok(Report::new(&check)?.with_table(table).with_status(status))
}

pub fn closure_check(n: usize, trials: u64, seed: u64) -> Result<Report> {
    let fan = gossip_fan(n)?;
    let report = closure_sample_check(&fan, trials, seed)?;
    let status = Status::from_check(report.escapes == 0);
    Ok(Report::new(&report)?.with_status(status))
}

pub fn pq_check(seed: u64, attempts: u64) -> Result<Report> {
    let r = pq_example_check(seed, attempts)?;
    let ok = r.spans_equal
        && r.substitution_matches
        && r.products_match
        && (r.p_dim, r.q_dim, r.intersection_dim) == (10, 10, 10)
        && r.witness.is_some();
    Ok(Report::new(&r)?.with_status(Status::from_check(ok)))
}

pub fn tdet(path: &Path) -> Result<Report> {
    let m = read_matrix(path)?;
    let d = groups::tdet(&m);
    Report::new(&json!({ "value": d.value, "multiplicity": d.multiplicity, "in_trop_sl": groups::in_trop_sl(&m) }))
}

pub fn sl_check(n: usize, trials: u64, seed: u64) -> Result<Report> {
    let r = groups::sl_closure_check(n, trials, seed)?;
    let status = Status::from_check(r.failures == 0 && r.submultiplicativity_violations == 0);
    Ok(Report::new(&r)?.with_status(status))
}

pub fn o2_check(path: &Path) -> Result<Report> {
    Report::new(&json!({ "cone": groups::o2_classify(&read_matrix(path)?)? }))
}

pub fn o3_check(path: &Path) -> Result<Report> {
    let m = read_matrix(path)?;
    let prevariety = groups::o3_prevariety_check(&m)?;
    let mut status = Status::Pass;
    let (classification, unclassifiable) = if m.is_nonnegative() && prevariety.satisfied {
        match groups::o3_nonneg_classify(&m) {
            Ok(c) => (Some(c), None),
            Err(e) => {
                status = Status::Mismatch;
                (None, Some(e.to_string()))
            }
        }
    } else {
        (None, None)
    };
    Ok(Report::new(&json!({ "prevariety": prevariety, "classification": classification,
        "unclassifiable": unclassifiable }))?
    .with_status(status))
}

pub fn realize(path: &Path, transpose: bool) -> Result<Report> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut g: DetourGraph = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if transpose {
        g = detour::transpose_detours(&g);
    }
    let m = detour::realize(&g);
    let surplus: Vec<_> = g.surplus_lengths().into_iter().map(|((i, j), s)| json!({"from": i, "to": j, "surplus": s})).collect();
    Ok(Report::new(&json!({ "matrix": m, "kleene_compatible": detour::kleene_compatible(&g), "surplus": surplus }))?
        .with_text(m.to_string()))
}
