//! Query execution and report rendering.

use dfsets_core::character::TranslatedSubgroup;
use dfsets_core::fox::{fox_alexander_matrix, minors_gcd};
use dfsets_core::gamma::{enumerate_epis_mod_aut, equivalent, fiber_representatives, gamma_count};
use dfsets_core::jump::{
    omega_describe, omega_member, pullback_diagnostics, sigma_member, singular_set_probe, tau_d, theta_witness,
    u_member, upsilon_witness, xi_d, ObstructionReport, Variety,
};
use dfsets_core::laurent::admissible_tau1;
use dfsets_core::oracle::{oracle_gamma_count, oracle_omega_agreement, oracle_xi, primitive_rows};
use dfsets_core::space::{brieskorn_closed_form_member, toric_char_variety};
use dfsets_core::{
    Arrangement, Bounds, Error, FgAbGroup, Homomorphism, Lattice, LaurentPolynomial, Result, Subgroup,
    TorsionCharacter,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::problem::{homomorphism, Problem, Query};

/// The result of one query.
pub struct Outcome {
    pub json: Value,
    pub text: Vec<String>,
    /// An oracle disagreed with the main computation.
    pub verify_failed: bool,
}

fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn vector(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

fn rational(x: &BigRational) -> Value {
    json!(x.to_string())
}

fn character(c: &TorsionCharacter) -> Value {
    Value::Array(c.values().iter().map(rational).collect())
}

fn character_text(c: &TorsionCharacter) -> String {
    let v: Vec<String> = c.values().iter().map(|x| x.to_string()).collect();
    format!("({})", v.join(", "))
}

fn lattice(l: &Lattice) -> Value {
    Value::Array(l.generators().iter().map(|g| vector(g)).collect())
}

fn lattice_text(l: &Lattice) -> String {
    let gens: Vec<String> = l.generators().iter().map(|g| vector_text(g)).collect();
    format!("span{{{}}}", gens.join(", "))
}

fn vector_text(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn subgroup(xi: &Subgroup) -> Value {
    json!({
        "generators": Value::Array(xi.generators().iter().map(|g| vector(g)).collect()),
        "rank": xi.rank(),
        "determinant_order": int(&xi.determinant_order()),
    })
}

fn subgroup_text(xi: &Subgroup) -> String {
    let gens: Vec<String> = xi.generators().iter().map(|g| vector_text(g)).collect();
    let det = xi.determinant_order();
    if det.is_one() {
        format!("⟨{}⟩", gens.join(", "))
    } else {
        format!("⟨{}⟩ (index {} in its saturation)", gens.join(", "), det)
    }
}

fn coset(c: &TranslatedSubgroup) -> Value {
    json!({
        "xi": Value::Array(c.xi().generators().iter().map(|g| vector(g)).collect()),
        "eta": character(c.eta()),
    })
}

fn coset_text(c: &TranslatedSubgroup) -> String {
    let gens: Vec<String> = c.xi().generators().iter().map(|g| vector_text(g)).collect();
    format!("{}·V⟨{}⟩", character_text(c.eta()), gens.join(", "))
}

fn matrix(nu: &Homomorphism) -> Value {
    Value::Array(nu.matrix().to_rows().iter().map(|r| vector(r)).collect())
}

fn matrix_text(nu: &Homomorphism) -> String {
    let rows: Vec<String> = nu
        .matrix()
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    format!("[{}]", rows.join("; "))
}

fn group(g: &FgAbGroup) -> Value {
    json!({"rank": g.rank(), "torsion": g.torsion()})
}

/// Integer polynomials as `t1^2*t2 - 3*t1 + 1`; otherwise the library rendering.
pub fn polynomial_text(f: &LaurentPolynomial) -> String {
    let Some(terms) = f.integer_terms() else {
        return f.to_string();
    };
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in terms.iter().rev().enumerate() {
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| if x == 1 { format!("t{}", i + 1) } else { format!("t{}^{x}", i + 1) })
            .collect();
        let mag = c.abs();
        let body = match (mono.is_empty(), mag.is_one()) {
            (true, _) => mag.to_string(),
            (false, true) => mono.join("*"),
            (false, false) => format!("{mag}*{}", mono.join("*")),
        };
        match (k, c.is_negative()) {
            (0, true) => out.push_str(&format!("-{body}")),
            (0, false) => out.push_str(&body),
            (_, true) => out.push_str(&format!(" - {body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
        }
    }
    out
}

fn arrangement_json(w: &Arrangement) -> Value {
    json!({
        "components": w.components.iter().map(coset).collect::<Vec<_>>(),
        "deleted": w.deleted.iter().map(subgroup).collect::<Vec<_>>(),
        "points": w.points.iter().map(character).collect::<Vec<_>>(),
    })
}

fn arrangement_text(w: &Arrangement, out: &mut Vec<String>) {
    for c in &w.components {
        out.push(format!("  component {}", coset_text(c)));
    }
    for xi in &w.deleted {
        out.push(format!("  deleted V({}) minus its identity component", subgroup_text(xi)));
    }
    for p in &w.points {
        out.push(format!("  point {}", character_text(p)));
    }
}

fn report_json(r: &ObstructionReport) -> Value {
    json!({
        "mode": r.mode.to_string(),
        "constant": r.constant,
        "group": group(&r.h),
        "quotient": group(&r.a),
        "constituents": r.constituents.iter().map(|c| json!({
            "kind": c.kind.to_string(),
            "xi": subgroup(&c.xi),
            "witness_eta": c.witness_eta.as_ref().map(character),
        })).collect::<Vec<_>>(),
    })
}

fn report_text(r: &ObstructionReport, out: &mut Vec<String>) {
    out.push(format!("mode: {}, c = {}", r.mode, r.constant));
    if r.constituents.is_empty() {
        out.push("  Ω is all of Γ(H, A)".into());
    }
    for c in &r.constituents {
        let eta = c
            .witness_eta
            .as_ref()
            .map(|e| format!(" via η = {}", character_text(e)))
            .unwrap_or_default();
        out.push(format!("  remove {}({}){}", c.kind, subgroup_text(&c.xi), eta));
    }
}

/// Query context shared by all handlers.
pub struct Runner<'a> {
    pub problem: &'a Problem,
    pub bounds: Bounds,
    pub verify: bool,
}

fn need<'b, T>(x: &'b Option<T>, what: &str) -> Result<&'b T> {
    x.as_ref().ok_or_else(|| Error::Input(format!("this query needs {what}")))
}

impl Runner<'_> {
    fn group(&self) -> Result<&FgAbGroup> {
        need(&self.problem.group, "\"group\"")
    }

    fn quotient(&self) -> Result<&FgAbGroup> {
        need(&self.problem.quotient, "\"quotient\"")
    }

    fn variety(&self) -> Result<&Variety> {
        need(&self.problem.variety, "a \"variety\"")
    }

    fn arrangement_only(&self) -> Result<&Arrangement> {
        let v = self.variety()?;
        if v.hypersurface.is_some() {
            return Err(Error::Unsupported("this query is defined for arrangements only".into()));
        }
        Ok(&v.arrangement)
    }

    pub fn run(&self, q: &Query) -> Result<Outcome> {
        match q {
            Query::Xi { d } => self.xi(*d),
            Query::Tau { d } => self.tau(*d),
            Query::GammaCount => self.gamma(),
            Query::Fiber { nu_bar } => self.fiber(nu_bar),
            Query::Member { nu } => self.member(nu),
            Query::Describe => self.describe(),
            Query::SigmaProbe { nu_bar } => self.sigma_probe(nu_bar),
            Query::Diagnose => self.diagnose(),
            Query::Toric { i } => self.toric(*i),
            Query::Brieskorn => self.brieskorn(),
            Query::Fox { codim } => self.fox(codim.unwrap_or(1)),
        }
    }

    fn xi(&self, d: u64) -> Result<Outcome> {
        if d == 0 {
            return Err(Error::Input("d must be positive".into()));
        }
        let w = &self.variety()?.arrangement;
        let xs = xi_d(w, d, &self.bounds)?;
        let mut text = vec![format!("Ξ_{d}: {} subgroup(s)", xs.len())];
        text.extend(xs.iter().map(|x| format!("  {}", subgroup_text(x))));
        let mut json = json!({"query": "xi", "d": d, "subgroups": xs.iter().map(subgroup).collect::<Vec<_>>()});
        let mut failed = false;
        if self.verify {
            let h = w.parent();
            let v = if h.is_torsion_free() && (1..=3).contains(&h.rank()) {
                let brute = oracle_xi(w, d, d, &self.bounds)?;
                failed = brute != xs;
                text.push(format!("verify: exhaustive search over subgroups of index ≤ {d}: {}", if failed { "DISAGREES" } else { "agrees" }));
                json!({"oracle": "exhaustive-xi", "agrees": !failed, "oracle_subgroups": brute.iter().map(subgroup).collect::<Vec<_>>()})
            } else {
                text.push("verify: skipped (the exhaustive search needs H = Z, Z^2 or Z^3)".into());
                json!({"oracle": "exhaustive-xi", "skipped": true})
            };
            json["verify"] = v;
        }
        Ok(Outcome { json, text, verify_failed: failed })
    }

    fn tau(&self, d: u64) -> Result<Outcome> {
        if d == 0 {
            return Err(Error::Input("d must be positive".into()));
        }
        let v = self.variety()?;
        let ls = tau_d(&v.arrangement, d, &self.bounds)?;
        let mut text = vec![format!("τ_{d}: {} lattice(s)", ls.len())];
        text.extend(ls.iter().map(|l| format!("  {}", lattice_text(l))));
        let mut json = json!({"query": "tau", "d": d, "lattices": ls.iter().map(lattice).collect::<Vec<_>>()});
        if let Some(f) = &v.hypersurface {
            let hs = admissible_tau1(f, &self.bounds)?;
            text.push(format!("hypersurface τ_1: {} lattice(s)", hs.len()));
            text.extend(hs.iter().map(|l| format!("  {}", lattice_text(l))));
            json["hypersurface_tau1"] = Value::Array(hs.iter().map(lattice).collect());
        }
        Ok(Outcome { json, text, verify_failed: false })
    }

    fn gamma(&self) -> Result<Outcome> {
        let (h, a) = (self.group()?, self.quotient()?);
        let n = gamma_count(h, a)?;
        let mut text = vec![format!("|Γ(H/Ā, A/Ā)| for H = {h}, A = {a}: {n}")];
        let count = match n.to_u64() {
            Some(v) => json!(v),
            None => json!(n.to_string()),
        };
        let mut json = json!({"query": "gamma-count", "group": group(h), "quotient": group(a), "count": count});
        let mut failed = false;
        if self.verify {
            let o = oracle_gamma_count(h, a, &self.bounds)?;
            failed = o != n;
            text.push(format!("verify: Epi/Aut enumeration gives {o}: {}", if failed { "DISAGREES" } else { "agrees" }));
            json["verify"] = json!({"oracle": "epi-count", "count": o.to_string(), "agrees": !failed});
        }
        Ok(Outcome { json, text, verify_failed: failed })
    }

    fn nu_bar(&self, rows: &[Vec<i64>]) -> Result<Homomorphism> {
        homomorphism(self.group()?, &self.quotient()?.free_part(), rows)
    }

    fn fiber(&self, rows: &[Vec<i64>]) -> Result<Outcome> {
        let a = self.quotient()?;
        let nu_bar = self.nu_bar(rows)?;
        let reps = fiber_representatives(&nu_bar, a, &self.bounds)?;
        let mut text = vec![format!("fiber over ν̄ = {}: {} class(es)", matrix_text(&nu_bar), reps.len())];
        text.extend(reps.iter().map(|r| format!("  {}", matrix_text(r))));
        let mut json = json!({"query": "fiber", "nu_bar": matrix(&nu_bar), "classes": reps.iter().map(matrix).collect::<Vec<_>>()});
        let mut failed = false;
        if self.verify {
            let expected = gamma_count(nu_bar.source(), a)?;
            let mut distinct = true;
            for (i, x) in reps.iter().enumerate() {
                for y in &reps[i + 1..] {
                    distinct &= !equivalent(x, y, &self.bounds)?;
                }
            }
            let size_ok = expected == reps.len().into();
            failed = !(distinct && size_ok);
            text.push(format!(
                "verify: {} classes expected, pairwise inequivalent: {}",
                expected, distinct
            ));
            json["verify"] = json!({"expected": expected.to_string(), "pairwise_inequivalent": distinct, "agrees": !failed});
        }
        Ok(Outcome { json, text, verify_failed: failed })
    }

    fn member_one(&self, nu: &Homomorphism, v: &Variety) -> Result<(Value, Vec<String>)> {
        let in_omega = omega_member(nu, v, &self.bounds)?;
        let witness = upsilon_witness(nu, v, &self.bounds)?;
        let a = nu.target();
        let mut text = vec![format!(
            "ν = {}: {}",
            matrix_text(nu),
            if in_omega { "in Ω" } else { "NOT in Ω" }
        )];
        let witness_json = witness.as_ref().map(|w| {
            let coset_desc = match &w.coset {
                Some(c) => coset_text(c),
                None => "the hypersurface".into(),
            };
            text.push(format!(
                "  Υ witness: component κ = {} of im ν̂ meets {} in dimension {}",
                character_text(&w.kappa),
                coset_desc,
                w.dimension
            ));
            json!({
                "kappa": character(&w.kappa),
                "coset": w.coset.as_ref().map(coset),
                "dimension": w.dimension,
            })
        });
        let mut tori = Vec::new();
        for xi in xi_d(&v.arrangement, a.cyclic_exponent(), &self.bounds)? {
            let s = sigma_member(nu, &xi)?;
            let u = u_member(nu, &xi)?;
            text.push(format!("  ξ = {}: σ {}, U {}", subgroup_text(&xi), s, u));
            tori.push(json!({"xi": subgroup(&xi), "sigma": s, "u": u}));
        }
        let mut deleted = Vec::new();
        for xi in &v.arrangement.deleted {
            let s = sigma_member(nu, xi)?;
            let t = theta_witness(nu, xi, &self.bounds)?;
            text.push(format!(
                "  deleted {}: σ {}, θ {}",
                subgroup_text(xi),
                s,
                t.as_ref().map(|r| format!("true (ρ = {})", character_text(r))).unwrap_or_else(|| "false".into())
            ));
            deleted.push(json!({"xi": subgroup(xi), "sigma": s, "theta": t.is_some(), "theta_witness": t.as_ref().map(character)}));
        }
        let json = json!({
            "nu": matrix(nu),
            "omega": in_omega,
            "upsilon": witness.is_some(),
            "upsilon_witness": witness_json,
            "xi_constituents": tori,
            "deleted_constituents": deleted,
        });
        Ok((json, text))
    }

    fn member(&self, rows: &[Vec<i64>]) -> Result<Outcome> {
        let (h, a) = (self.group()?, self.quotient()?);
        let v = self.variety()?;
        let nus = if rows.len() == a.dim() {
            vec![homomorphism(h, a, rows)?]
        } else if rows.len() == a.rank() {
            fiber_representatives(&self.nu_bar(rows)?, a, &self.bounds)?
        } else {
            return Err(Error::Dimension(format!(
                "ν needs {} rows (or {} rows for a whole fiber)",
                a.dim(),
                a.rank()
            )));
        };
        let mut text = Vec::new();
        let mut results = Vec::new();
        let mut count = 0;
        for nu in &nus {
            let (j, t) = self.member_one(nu, v)?;
            count += usize::from(j["omega"].as_bool() == Some(true));
            results.push(j);
            text.extend(t);
        }
        if nus.len() > 1 {
            text.push(format!("{count} of {} classes in Ω", nus.len()));
        }
        let mut json = json!({"query": "member", "results": results, "in_omega": count, "classes": nus.len()});
        let mut failed = false;
        if self.verify {
            let r = oracle_omega_agreement(v, a, &nus, &self.bounds)?;
            failed = !r.agrees();
            text.push(verify_line(&r.disagreements, r.checked));
            json["verify"] = json!({"oracle": "omega-agreement", "checked": r.checked, "disagreements": r.disagreements});
        }
        Ok(Outcome { json, text, verify_failed: failed })
    }

    /// Classes `[ν]` with `ν̄` primitive of small height, for sampling `Γ(H, A)` when `rank A = 1`.
    fn sample(&self, h: &FgAbGroup, a: &FgAbGroup) -> Result<Option<Vec<Homomorphism>>> {
        if a.rank() == 0 {
            return Ok(enumerate_epis_mod_aut(h, a, &self.bounds).ok());
        }
        if a.rank() != 1 || h.rank() > 6 {
            return Ok(None);
        }
        let height = if h.rank() <= 3 { 2 } else { 1 };
        let mut out = Vec::new();
        for row in primitive_rows(h.rank(), height) {
            let mut full = row;
            full.resize(h.dim(), 0);
            let nu_bar = homomorphism(h, &a.free_part(), &[full])?;
            out.extend(fiber_representatives(&nu_bar, a, &self.bounds)?);
        }
        Ok(Some(out))
    }

    fn describe_with(&self, v: &Variety, a: &FgAbGroup, text: &mut Vec<String>, json: &mut Value) -> Result<bool> {
        let r = omega_describe(v, a, &self.bounds)?;
        report_text(&r, text);
        json["report"] = report_json(&r);
        if !self.verify {
            return Ok(false);
        }
        match self.sample(v.parent(), a)? {
            Some(sample) => {
                let agreement = oracle_omega_agreement(v, a, &sample, &self.bounds)?;
                text.push(verify_line(&agreement.disagreements, agreement.checked));
                json["verify"] = json!({
                    "oracle": "omega-agreement",
                    "checked": agreement.checked,
                    "in_omega": agreement.in_omega,
                    "disagreements": agreement.disagreements,
                });
                Ok(!agreement.agrees())
            }
            None => {
                text.push("verify: skipped (sampling needs rank A ≤ 1 and rank H ≤ 6)".into());
                json["verify"] = json!({"oracle": "omega-agreement", "skipped": true});
                Ok(false)
            }
        }
    }

    fn describe(&self) -> Result<Outcome> {
        let (v, a) = (self.variety()?, self.quotient()?);
        let mut text = vec![format!("Ω_A for H = {}, A = {a}", v.parent())];
        let mut json = json!({"query": "describe"});
        let failed = self.describe_with(v, a, &mut text, &mut json)?;
        Ok(Outcome { json, text, verify_failed: failed })
    }

    fn sigma_probe(&self, rows: &[Vec<i64>]) -> Result<Outcome> {
        let (v, a) = (self.variety()?, self.quotient()?);
        let nu_bar = self.nu_bar(rows)?;
        let p = singular_set_probe(v, a, &nu_bar, &self.bounds)?;
        let mut text = vec![
            format!("ν̄ = {}: {}", matrix_text(&nu_bar), if p.base_in_omega { "in Ω_Ā" } else { "not in Ω_Ā" }),
            format!("fiber: {} classes, {} in Ω_A", p.fiber_size, p.in_omega_count),
            format!("singular: {}", p.is_singular()),
        ];
        text.extend(p.members.iter().map(|m| format!("  member {}", matrix_text(m))));
        let mut json = json!({
            "query": "sigma-probe",
            "nu_bar": matrix(&nu_bar),
            "base_in_omega": p.base_in_omega,
            "fiber_size": p.fiber_size,
            "in_omega": p.in_omega_count,
            "singular": p.is_singular(),
            "members": p.members.iter().map(matrix).collect::<Vec<_>>(),
        });
        let mut failed = false;
        if self.verify {
            let fiber = fiber_representatives(&nu_bar, a, &self.bounds)?;
            let r = oracle_omega_agreement(v, a, &fiber, &self.bounds)?;
            failed = !r.agrees() || r.in_omega != p.in_omega_count;
            text.push(verify_line(&r.disagreements, r.checked));
            json["verify"] = json!({"oracle": "omega-agreement", "checked": r.checked, "in_omega": r.in_omega, "disagreements": r.disagreements});
        }
        Ok(Outcome { json, text, verify_failed: failed })
    }

    fn diagnose(&self) -> Result<Outcome> {
        let (w, a) = (self.arrangement_only()?, self.quotient()?);
        let d = pullback_diagnostics(w, a)?;
        let text = vec![format!("{}: {}", d.verdict, d.reason)];
        let json = json!({"query": "diagnose", "verdict": d.verdict.to_string(), "reason": d.reason});
        Ok(Outcome { json, text, verify_failed: false })
    }

    fn toric(&self, i: Option<i64>) -> Result<Outcome> {
        let (l, default_i) = need(&self.problem.toric, "a \"toric\" variety")?;
        let i = i.unwrap_or(*default_i);
        let w = toric_char_variety(l, i, &self.bounds)?;
        let mut text = vec![format!("V^{i}(T_L) for L on {} vertices:", l.vertices())];
        arrangement_text(&w, &mut text);
        let mut json = json!({"query": "toric", "i": i, "variety": arrangement_json(&w)});
        let mut failed = false;
        if let Some(a) = &self.problem.quotient {
            let d = pullback_diagnostics(&w, a)?;
            text.push(format!("diagnostics: {}", d.verdict));
            json["diagnostics"] = json!({"verdict": d.verdict.to_string(), "reason": d.reason});
            failed = self.describe_with(&Variety::from(w), a, &mut text, &mut json)?;
        }
        Ok(Outcome { json, text, verify_failed: failed })
    }

    fn brieskorn(&self) -> Result<Outcome> {
        let b = need(&self.problem.brieskorn, "a \"brieskorn\" variety")?;
        let s = &b.data;
        let h = self.group()?;
        let mut text = vec![
            format!("Σ({}): genus {}, e = {}, |Tors H| = {}, α = {}", s.exponents.iter().map(u64::to_string).collect::<Vec<_>>().join(", "), s.genus, s.euler, s.torsion_order, s.alpha),
            format!("H = {h}"),
        ];
        let orbits: Vec<Value> = s.orbits.iter().map(|(a, b, c)| json!({"alpha": a, "beta": b, "count": c})).collect();
        let mut json = json!({
            "query": "brieskorn",
            "exponents": s.exponents,
            "genus": s.genus,
            "euler": rational(&s.euler),
            "torsion_order": int(&s.torsion_order),
            "alpha": int(&s.alpha),
            "orbits": orbits,
            "group": group(h),
            "h_elements": b.h_characters.iter().map(character).collect::<Vec<_>>(),
        });
        let mut failed = false;
        match &self.problem.variety {
            Some(v) => {
                text.push("V^1:".into());
                arrangement_text(&v.arrangement, &mut text);
                json["v1"] = arrangement_json(&v.arrangement);
                if let Some(a) = &self.problem.quotient {
                    failed = self.describe_with(v, a, &mut text, &mut json)?;
                    if self.verify {
                        if let Some(sample) = self.sample(h, a)? {
                            let mut mismatches = Vec::new();
                            for nu in &sample {
                                let exact = omega_member(nu, v, &self.bounds)?;
                                let closed = brieskorn_closed_form_member(s, nu, &b.h_characters)?;
                                if exact != closed {
                                    mismatches.push(format!("ν = {}: exact {exact}, closed form {closed}", matrix_text(nu)));
                                }
                            }
                            text.push(format!(
                                "closed-form check: {} of {} sampled classes differ",
                                mismatches.len(),
                                sample.len()
                            ));
                            json["closed_form_check"] = json!({"checked": sample.len(), "mismatches": mismatches});
                        }
                    }
                }
            }
            None => text.push("V^1 is not computed for genus-0 base curves".into()),
        }
        Ok(Outcome { json, text, verify_failed: failed })
    }

    fn fox(&self, codim: usize) -> Result<Outcome> {
        let p = need(&self.problem.presentation, "a \"presentation\"")?;
        let h = p.abelianization();
        let m = fox_alexander_matrix(p);
        let mut text = vec![format!("H_1 = {h}"), "Alexander matrix:".into()];
        for row in &m {
            let r: Vec<String> = row.iter().map(polynomial_text).collect();
            text.push(format!("  [{}]", r.join(", ")));
        }
        let rows: Vec<Value> = m
            .iter()
            .map(|r| Value::Array(r.iter().map(|e| json!(polynomial_text(e))).collect()))
            .collect();
        let mut json = json!({"query": "fox", "abelianization": group(h), "matrix": rows, "codim": codim});
        if h.is_torsion_free() {
            let g = minors_gcd(&m, h, codim)?;
            text.push(format!("gcd of codimension-{codim} minors: {}", polynomial_text(&g)));
            json["minors_gcd"] = json!(polynomial_text(&g));
            text.push("caveat: V^1 agrees with Z(gcd) away from the trivial character, whose membership is not decided".into());
            json["undecided_at_trivial_character"] = json!(true);
        } else {
            text.push("minors gcd skipped: H_1 has torsion".into());
            json["minors_gcd"] = Value::Null;
        }
        let mut failed = false;
        if self.verify {
            let mut ok = true;
            for row in &m {
                let mut acc = LaurentPolynomial::zero(h);
                for (i, e) in row.iter().enumerate() {
                    acc = acc.add(&e.mul(&p.generator_minus_one(i))?)?;
                }
                ok &= acc.is_zero();
            }
            failed = !ok;
            text.push(format!("verify: fundamental identity {}", if ok { "holds" } else { "FAILS" }));
            json["verify"] = json!({"oracle": "fox-identity", "agrees": ok});
        }
        Ok(Outcome { json, text, verify_failed: failed })
    }
}

fn verify_line(disagreements: &[String], checked: usize) -> String {
    if disagreements.is_empty() {
        format!("verify: scan, closed form and report agree on {checked} class(es)")
    } else {
        format!("verify: {} DISAGREEMENT(S) among {checked}: {}", disagreements.len(), disagreements.join("; "))
    }
}
