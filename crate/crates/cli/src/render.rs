use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use weylhom::basis_graph::WeightKey;
use weylhom::homology::DegreeHomology;
use weylhom::pipeline::{Analysis, SuiteReport};

use crate::{Failure, Format};

#[derive(Debug, Serialize)]
pub struct JsonReport {
    pub system: SystemInfo,
    pub components: Vec<ComponentEntry>,
    pub summary: SummaryEntry,
}

#[derive(Debug, Serialize)]
pub struct SystemInfo {
    #[serde(rename = "type")]
    pub dynkin_type: String,
    pub rank: usize,
    pub num_roots: usize,
    pub weyl_order: usize,
}

#[derive(Debug, Serialize)]
pub struct ComponentEntry {
    pub weight: Vec<i64>,
    pub size: usize,
    pub rank: usize,
    /// Degrees with nonzero homology over `Z` or some `F_p`.
    pub homology: BTreeMap<usize, DegreeEntry>,
}

#[derive(Debug, Serialize)]
pub struct DegreeEntry {
    pub free: usize,
    pub torsion: Vec<u64>,
    pub modp: BTreeMap<u64, usize>,
}

#[derive(Debug, Serialize)]
pub struct SummaryEntry {
    pub betti: Vec<usize>,
    pub torsion_primes: Vec<u64>,
    pub violations: Vec<String>,
}

fn entry(h: &DegreeHomology) -> DegreeEntry {
    DegreeEntry {
        free: h.free,
        torsion: h.torsion.clone(),
        modp: h.modp.clone(),
    }
}

pub fn json_report(a: &Analysis) -> JsonReport {
    let components = a
        .decomposition
        .components
        .iter()
        .zip(&a.reports)
        .map(|(c, r)| ComponentEntry {
            weight: c.weight.vector().coords().to_vec(),
            size: c.len(),
            rank: c.rank,
            homology: r
                .degrees
                .iter()
                .filter(|(_, h)| !h.is_zero())
                .map(|(&k, h)| (k, entry(h)))
                .collect(),
        })
        .collect();
    JsonReport {
        system: SystemInfo {
            dynkin_type: a.system.dynkin_type.to_string(),
            rank: a.system.rank,
            num_roots: a.system.num_roots(),
            weyl_order: a.group.order(),
        },
        components,
        summary: SummaryEntry {
            betti: a.summary.betti.clone(),
            torsion_primes: a.summary.torsion_primes.clone(),
            violations: a.summary.violations.clone(),
        },
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn describe(h: &DegreeHomology) -> String {
    let mut parts = Vec::new();
    if h.free > 0 {
        parts.push(if h.free == 1 {
            "Z".to_string()
        } else {
            format!("Z^{}", h.free)
        });
    }
    parts.extend(h.torsion.iter().map(|q| format!("Z/{q}")));
    if parts.is_empty() {
        parts.push("0".into());
    }
    let modp: Vec<String> = h
        .modp
        .iter()
        .filter(|(_, &d)| d > 0)
        .map(|(p, d)| format!("F{p}:{d}"))
        .collect();
    if modp.is_empty() {
        parts.join("+")
    } else {
        format!("{} [{}]", parts.join("+"), modp.join(" "))
    }
}

pub(crate) fn write_compute(
    a: &Analysis,
    format: Format,
    out: &mut impl Write,
) -> Result<(), Failure> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &json_report(a))
                .map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record([
                "weight", "size", "rank", "degree", "free", "torsion", "modp",
            ])?;
            for (c, r) in a.decomposition.components.iter().zip(&a.reports) {
                for (k, h) in r.degrees.iter().filter(|(_, h)| !h.is_zero()) {
                    let modp: Vec<String> =
                        h.modp.iter().map(|(p, d)| format!("{p}:{d}")).collect();
                    w.write_record([
                        join(c.weight.vector().coords(), " "),
                        c.len().to_string(),
                        c.rank.to_string(),
                        k.to_string(),
                        h.free.to_string(),
                        join(&h.torsion, ";"),
                        modp.join(";"),
                    ])?;
                }
            }
            w.flush()?;
        }
        Format::Text => {
            let s = &a.summary;
            writeln!(
                out,
                "{}: {} positive roots, |W| = {}, {} weight components ({} singletons), max rank {}",
                a.system.name(),
                a.system.num_roots(),
                a.group.order(),
                a.decomposition.components.len(),
                s.singleton_weights.len(),
                a.max_rank()
            )?;
            writeln!(out, "primes: {}", join(&a.primes, ","))?;
            writeln!(out, "betti: {}", join(&s.betti, " "))?;
            writeln!(out, "torsion primes: {}", join(&s.torsion_primes, ","))?;
            writeln!(out)?;
            writeln!(
                out,
                "{:<28} {:>6} {:>4}  homology",
                "weight", "size", "rank"
            )?;
            for (c, r) in a.decomposition.components.iter().zip(&a.reports) {
                let nonzero: Vec<String> = r
                    .degrees
                    .iter()
                    .filter(|(_, h)| !h.is_zero())
                    .map(|(k, h)| format!("H{k}={}", describe(h)))
                    .collect();
                if nonzero.is_empty() {
                    continue;
                }
                writeln!(
                    out,
                    "{:<28} {:>6} {:>4}  {}",
                    c.weight.to_string(),
                    c.len(),
                    c.rank,
                    nonzero.join(", ")
                )?;
            }
            if !s.violations.is_empty() {
                writeln!(out, "\nviolations:")?;
                for v in &s.violations {
                    writeln!(out, "  {v}")?;
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn write_suite(
    suite: &SuiteReport,
    format: Format,
    out: &mut impl Write,
) -> Result<(), Failure> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, suite).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["check", "checked", "failed", "example"])?;
            for c in &suite.checks {
                w.write_record([
                    c.name.clone(),
                    c.checked.to_string(),
                    c.failed.to_string(),
                    c.example.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "verification of {}", suite.system)?;
            for c in &suite.checks {
                let status = if c.passed() { "PASS" } else { "FAIL" };
                write!(
                    out,
                    "{status} {:<24} {:>10} checked {:>6} failed",
                    c.name, c.checked, c.failed
                )?;
                match &c.example {
                    Some(e) => writeln!(out, "  e.g. {e}")?,
                    None => writeln!(out)?,
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn write_audit(
    a: &Analysis,
    rows: &[(u64, WeightKey, usize)],
    format: Format,
    out: &mut impl Write,
) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Row<'a> {
        prime: u64,
        weight: &'a [i64],
        rank: usize,
        divides: bool,
    }
    let records: Vec<Row> = rows
        .iter()
        .map(|(p, w, r)| Row {
            prime: *p,
            weight: w.vector().coords(),
            rank: *r,
            divides: (*r as u64).is_multiple_of(*p),
        })
        .collect();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &records).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["prime", "weight", "rank", "divides"])?;
            for r in &records {
                w.write_record([
                    r.prime.to_string(),
                    join(r.weight, " "),
                    r.rank.to_string(),
                    r.divides.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(
                out,
                "vanishing audit for {} (primes {})",
                a.system.name(),
                join(&a.primes, ",")
            )?;
            for r in &records {
                writeln!(
                    out,
                    "p={} weight {} rank {} {}",
                    r.prime,
                    WeightKey(weylhom::ExactVector::new(r.weight.to_vec())),
                    r.rank,
                    if r.divides { "ok" } else { "VIOLATION" }
                )?;
            }
            writeln!(out, "{} weights with nonzero mod-p homology", records.len())?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn describes_groups() {
        let mut h = DegreeHomology {
            free: 2,
            torsion: vec![2, 4],
            modp: BTreeMap::from([(2, 3), (3, 0)]),
        };
        assert_eq!(describe(&h), "Z^2+Z/2+Z/4 [F2:3]");
        h.free = 1;
        h.torsion.clear();
        h.modp.clear();
        assert_eq!(describe(&h), "Z");
        h.free = 0;
        assert_eq!(describe(&h), "0");
        assert_eq!(join(&[1, 2, 3], ","), "1,2,3");
    }
}
