use monideal::closure::{NormalityReport, NormalityVerdict};
use monideal::decomp::AssProfile;
use monideal::properties::{CriterionReport, PropertyVerdict};
use monideal::{Monomial, MonomialIdeal};
use serde::Serialize;

/// Everything one invocation produces: echoed command, input digests, the
/// verdict, and timings. Deterministic for fixed inputs and bounds apart from
/// the timing block.
#[derive(Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub bounds: Bounds,
    pub verdict: Verdict,
    pub timing: Timing,
    pub exit_code: i32,
}

#[derive(Serialize)]
pub struct InputDigest {
    pub kind: &'static str,
    pub name: String,
    pub sha256: String,
}

#[derive(Serialize)]
pub struct Bounds {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timeout_sec: Option<u64>,
}

#[derive(Serialize)]
pub struct Timing {
    pub parse_ms: u128,
    pub compute_ms: u128,
}

/// The one payload of a run; the exit code is a total function of this.
#[derive(Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Verdict {
    Ideal {
        vars: Vec<String>,
        rendered: Vec<String>,
        ideal: MonomialIdeal,
        #[serde(skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    DominatingSets {
        count: usize,
        /// 1-indexed vertex sets, each sorted ascending.
        sets: Vec<Vec<usize>>,
    },
    Normality(NormalityReport),
    Closedness {
        integrally_closed: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<Monomial>,
    },
    AssScan {
        profile: AssProfile,
        /// True when a deadline cut the scan short of the requested bound.
        truncated: bool,
    },
    Property(PropertyVerdict),
    Criterion(CriterionReport),
    Inapplicable {
        reason: String,
    },
}

/// 0 verified/success, 1 refuted with witness, 2 inapplicable, 3 bound or
/// timeout exhausted with partial evidence.
pub fn exit_code(verdict: &Verdict) -> i32 {
    match verdict {
        Verdict::Ideal { .. } | Verdict::DominatingSets { .. } => 0,
        Verdict::Normality(r) => match r.verdict {
            NormalityVerdict::NotNormal => 1,
            _ if r.timed_out => 3,
            _ => 0,
        },
        Verdict::Closedness { integrally_closed, .. } => {
            if *integrally_closed {
                0
            } else {
                1
            }
        }
        Verdict::AssScan { truncated, .. } => {
            if *truncated {
                3
            } else {
                0
            }
        }
        Verdict::Property(v) => {
            if v.holds {
                0
            } else {
                1
            }
        }
        Verdict::Criterion(r) => {
            if !r.applicable {
                return 2;
            }
            match &r.conclusion {
                Some(c) if c.verdict == NormalityVerdict::NotNormal => 1,
                Some(c) if c.timed_out => 3,
                Some(_) => 0,
                None => 2,
            }
        }
        Verdict::Inapplicable { .. } => 2,
    }
}

/// Plain-text rendering of a verdict; says the same thing the JSON does.
pub fn render_text(verdict: &Verdict, names: &[String]) -> String {
    match verdict {
        Verdict::Ideal { vars, rendered, note, .. } => {
            let mut out = format!("vars: {}\n", vars.join(" "));
            if rendered.is_empty() {
                out.push_str("(zero ideal)\n");
            }
            for g in rendered {
                out.push_str(g);
                out.push('\n');
            }
            if let Some(note) = note {
                out.push_str(&format!("note: {note}\n"));
            }
            out
        }
        Verdict::DominatingSets { count, sets } => {
            let mut out = format!("{count} minimal dominating sets\n");
            for s in sets {
                let body =
                    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ");
                out.push_str(&format!("{{{body}}}\n"));
            }
            out
        }
        Verdict::Normality(r) => {
            let mut out = match r.verdict {
                NormalityVerdict::Normal => format!(
                    "normal (powers 1..={} integrally closed; decision bound {} covered)\n",
                    r.verified_up_to, r.decision_bound
                ),
                NormalityVerdict::NotNormal => {
                    let witness = r
                        .failure_witness
                        .as_ref()
                        .map_or_else(|| "?".into(), |w| w.render(names));
                    format!(
                        "not normal: the closure of I^{} gains {witness}\n",
                        r.failure_power.unwrap_or(0)
                    )
                }
                NormalityVerdict::VerifiedUpTo => format!(
                    "verified up to t = {} of decision bound {}{}\n",
                    r.verified_up_to,
                    r.decision_bound,
                    if r.timed_out { " (timed out)" } else { " (bounded run)" }
                ),
            };
            out.push_str(&format!("rule: {}\n", r.decision_rule));
            out
        }
        Verdict::Closedness { integrally_closed, witness } => match witness {
            Some(w) if !integrally_closed => {
                format!("not integrally closed: closure gains {}\n", w.render(names))
            }
            _ => "integrally closed\n".into(),
        },
        Verdict::AssScan { profile, truncated } => {
            let mut out = String::new();
            let n = names.len();
            for row in &profile.per_power {
                let primes = row
                    .primes
                    .iter()
                    .map(|p| p.render(names))
                    .collect::<Vec<_>>()
                    .join(", ");
                let tail = if row.depth_zero { "  [depth zero]" } else { "" };
                out.push_str(&format!("k={}: {primes}{tail}\n", row.k));
            }
            let onset = profile
                .per_power
                .iter()
                .find(|row| row.primes.iter().any(|p| p.is_maximal(n)));
            match onset {
                Some(row) => out.push_str(&format!(
                    "irrelevant ideal present from power {}\n",
                    row.k
                )),
                None => out.push_str(&format!(
                    "irrelevant ideal absent through power {}\n",
                    profile.per_power.last().map_or(0, |r| r.k)
                )),
            }
            if *truncated {
                out.push_str("scan truncated by timeout\n");
            }
            out
        }
        Verdict::Property(v) => {
            let mut out = if v.holds {
                format!("holds: {}\n", v.notes)
            } else {
                format!("fails: {}\n", v.notes)
            };
            if let (Some(k), Some(p)) = (v.extra_prime_from, &v.extra_prime) {
                out.push_str(&format!(
                    "single extra prime {} from power {k}\n",
                    p.render(names)
                ));
            }
            if let Some(ce) = &v.counterexample {
                out.push_str(&format!("counterexample at power {}: {}\n", ce.k, ce.evidence));
                if !ce.extra_primes.is_empty() {
                    let primes = ce
                        .extra_primes
                        .iter()
                        .map(|p| p.render(names))
                        .collect::<Vec<_>>()
                        .join(", ");
                    out.push_str(&format!("extra primes: {primes}\n"));
                }
            }
            out
        }
        Verdict::Criterion(r) => {
            let mut out = String::new();
            for h in &r.hypotheses {
                let mark = if h.holds { "ok  " } else { "FAIL" };
                out.push_str(&format!("[{mark}] {}: {}\n", h.name, h.detail));
            }
            if !r.applicable {
                out.push_str("inapplicable: a hypothesis failed, no conclusion drawn\n");
                return out;
            }
            if let Some(l) = &r.constructed {
                out.push_str(&format!("constructed L with {} generators\n", l.num_gens()));
            }
            if let Some(c) = &r.conclusion {
                out.push_str(&render_text(&Verdict::Normality(c.clone()), names));
            }
            out
        }
        Verdict::Inapplicable { reason } => format!("inapplicable: {reason}\n"),
    }
}
