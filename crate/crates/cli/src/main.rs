//! Command line front end for the exponential Puiseux semiring library.
//!
//! Every command takes the instance as `--r n/d --N <monoid>` and renders
//! either text lines or one JSON object (`--json`). Exit codes: 0 on
//! success including negative membership answers, 1 on parse errors, 2 on
//! domain errors, 3 when verify finds a failing check.

mod cache;
mod render;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use puiseux_core::invariants::{
    betti_elements, catenary_element, catenary_semiring, classify, delta_semiring, elasticity,
    length_set, omega, union_k, Elasticity, OmegaStatus,
};
use puiseux_core::{parse_element, Caps, Error, Rational, Semiring, SemiringClass};

#[derive(Parser)]
#[command(
    name = "puiseux",
    version,
    about = "Exact factorization invariants of exponential Puiseux semirings"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Instance {
    /// Base rational as `n/d` or an integer.
    #[arg(long)]
    r: String,
    /// Exponent monoid: `gens:a,b,...` or `elems:e,...;cond:c`.
    #[arg(long = "N")]
    monoid: String,
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Emit one JSON object instead of text lines.
    #[arg(long)]
    json: bool,
    /// Result cache file; the PUISEUX_CACHE env var overrides this.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct SearchCaps {
    /// Largest atom index searches may touch.
    #[arg(long, default_value_t = 64)]
    exp_cap: usize,
    /// Longest factorization kept; 0 removes the cap.
    #[arg(long, default_value_t = 512)]
    len_cap: u64,
    /// Atom index cap for semiring-wide scans.
    #[arg(long, default_value_t = 16)]
    index_cap: usize,
    /// Largest bouquet size the omega search tries.
    #[arg(long, default_value_t = 16)]
    size_cap: u64,
    /// Search node budget.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
}

impl SearchCaps {
    fn to_caps(&self) -> Caps {
        Caps {
            exp_cap: self.exp_cap,
            len_cap: (self.len_cap != 0).then_some(self.len_cap),
            budget: self.budget,
        }
    }

    fn slot(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.exp_cap, self.len_cap, self.index_cap, self.size_cap, self.budget
        )
    }

    fn as_json(&self) -> Value {
        json!({
            "exp_cap": self.exp_cap,
            "len_cap": if self.len_cap == 0 { Value::Null } else { json!(self.len_cap) },
            "index_cap": self.index_cap,
            "size_cap": self.size_cap,
            "budget": self.budget,
        })
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Instance summary: class, monoid data, leading atoms.
    Info {
        #[command(flatten)]
        inst: Instance,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Decide membership and print the shortest factorization.
    Member {
        #[command(flatten)]
        inst: Instance,
        /// Element expression, e.g. `2*r^18+4*r^25` or `5/2`.
        #[arg(long)]
        element: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Enumerate the factorizations of an element within the caps.
    Factorize {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        element: String,
        #[command(flatten)]
        caps: SearchCaps,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// The set of factorization lengths of an element.
    Lengths {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        element: String,
        #[command(flatten)]
        caps: SearchCaps,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Semiring delta set: proven gaps, bounds, witnesses.
    Delta {
        #[command(flatten)]
        inst: Instance,
        #[command(flatten)]
        caps: SearchCaps,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Catenary degree of the semiring, or of one element.
    Catenary {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        element: Option<String>,
        #[command(flatten)]
        caps: SearchCaps,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// The first Betti elements with their two factorization forms.
    Betti {
        #[command(flatten)]
        inst: Instance,
        /// How many Betti elements to list.
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Union of the length sets over all sums of k atoms.
    Uk {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        caps: SearchCaps,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Omega primality of one atom.
    Omega {
        #[command(flatten)]
        inst: Instance,
        /// Atom index (0 is the smallest exponent).
        #[arg(long)]
        atom: usize,
        #[command(flatten)]
        caps: SearchCaps,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Atomicity, chain condition, and tameness flags.
    Classify {
        #[command(flatten)]
        inst: Instance,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Run the structural checks over an instance pool.
    Verify {
        /// Pool entry `r@monoid`; repeat the flag for more instances.
        /// Defaults to the built-in six-instance pool.
        #[arg(long)]
        pool: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: u8,
    stdout: Option<String>,
    stderr: Option<String>,
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotCofinite { .. } => "not-cofinite",
        Error::NotClosed { .. } => "not-closed",
        Error::NotAMonoid(_) => "not-a-monoid",
        Error::NotAtomic => "not-atomic",
        Error::InsufficientCoefficient { .. } => "insufficient-coefficient",
        Error::BudgetExceeded { .. } => "budget-exceeded",
        Error::MixedResidues { .. } => "mixed-residues",
        Error::Parse(_) => "parse",
        Error::InvalidInput(_) => "invalid-input",
    }
}

fn domain_failure(json_mode: bool, command: &str, kind: &str, message: &str) -> Failure {
    if json_mode {
        Failure {
            code: 2,
            stdout: Some(render::error_object(command, kind, message)),
            stderr: None,
        }
    } else {
        Failure {
            code: 2,
            stdout: None,
            stderr: Some(format!("error: {message}")),
        }
    }
}

fn fail(json_mode: bool, command: &str, e: &Error) -> Failure {
    match e {
        Error::Parse(m) => Failure {
            code: 1,
            stdout: None,
            stderr: Some(format!("parse error: {m}")),
        },
        _ => domain_failure(json_mode, command, error_kind(e), &e.to_string()),
    }
}

fn build(inst: &Instance, json_mode: bool, command: &str) -> Result<Semiring, Failure> {
    let r: Rational = inst.r.parse().map_err(|e| fail(json_mode, command, &e))?;
    let nm = inst.monoid.parse().map_err(|e| fail(json_mode, command, &e))?;
    Semiring::new(r, nm).map_err(|e| fail(json_mode, command, &e))
}

fn element_of(s: &Semiring, text: &str, json_mode: bool, command: &str) -> Result<Rational, Failure> {
    parse_element(s, text).map_err(|e| fail(json_mode, command, &e))
}

fn cache_key(
    command: &str,
    s: &Semiring,
    element: Option<&Rational>,
    extra: &str,
    caps: Option<&SearchCaps>,
    json_mode: bool,
) -> String {
    let gens: Vec<String> = s
        .monoid()
        .min_generators()
        .iter()
        .map(u64::to_string)
        .collect();
    format!(
        "v{}|{}|{}/{}|{}|{}|{}|{}|{}",
        env!("CARGO_PKG_VERSION"),
        command,
        s.numer(),
        s.denom(),
        gens.join(","),
        element.map(|x| x.to_string()).unwrap_or_else(|| "-".into()),
        extra,
        caps.map(SearchCaps::slot).unwrap_or_else(|| "-".into()),
        if json_mode { "json" } else { "text" },
    )
}

/// Serve from the cache when possible, otherwise compute and store.
fn with_cache<F>(key: String, out: &OutputOpts, compute: F) -> Result<String, Failure>
where
    F: FnOnce() -> Result<String, Failure>,
{
    let path = cache::resolve_path(out.cache.clone());
    if let Some(p) = &path {
        if let Some(hit) = cache::lookup(p, &key) {
            return Ok(hit);
        }
    }
    let rendered = compute()?;
    if let Some(p) = &path {
        cache::store(p, &key, &rendered);
    }
    Ok(rendered)
}

fn elasticity_value(s: &Semiring, x: Option<&Rational>) -> Option<Elasticity> {
    elasticity(s, x).ok()
}

fn elasticity_json(e: &Option<Elasticity>) -> Value {
    match e {
        Some(Elasticity::Finite(q)) => render::rat(q),
        Some(Elasticity::Unbounded) => json!("unbounded"),
        None => Value::Null,
    }
}

fn elasticity_text(e: &Option<Elasticity>) -> Option<String> {
    match e {
        Some(Elasticity::Finite(q)) => Some(q.to_string()),
        Some(Elasticity::Unbounded) => Some("unbounded".into()),
        None => None,
    }
}

fn run_info(s: &Semiring, out: &OutputOpts) -> Result<String, Failure> {
    let m = s.monoid();
    let atom_count = match s.class() {
        SemiringClass::Trivial => 1,
        SemiringClass::NonAtomic => 0,
        _ => 4,
    };
    let atoms: Vec<Rational> = (0..atom_count).map(|i| s.atom(i).expect("within class")).collect();
    let exponents: Vec<u64> = (0..8).map(|i| m.element(i)).collect();
    let el = elasticity_value(s, None);
    if out.json {
        let mut body = Map::new();
        body.insert("class".into(), json!(render::class_name(s.class())));
        body.insert("atomic".into(), json!(s.is_atomic()));
        body.insert("min_generators".into(), json!(m.min_generators()));
        body.insert("frobenius".into(), json!(m.frobenius()));
        body.insert("conductor".into(), json!(m.conductor()));
        body.insert("conductor_index".into(), json!(m.conductor_index()));
        body.insert("exponents".into(), json!(exponents));
        body.insert(
            "atoms".into(),
            Value::Array(atoms.iter().map(render::rat).collect()),
        );
        body.insert("elasticity".into(), elasticity_json(&el));
        Ok(render::envelope("info", s, body))
    } else {
        let mut t = String::new();
        t.push_str(&format!("r: {}\n", s.r()));
        t.push_str(&format!("class: {}\n", render::class_name(s.class())));
        t.push_str(&format!("monoid: {}\n", m));
        let gens: Vec<String> = m.min_generators().iter().map(u64::to_string).collect();
        t.push_str(&format!("min generators: {}\n", gens.join(", ")));
        t.push_str(&format!("frobenius: {}\n", m.frobenius()));
        t.push_str(&format!("conductor: {}\n", m.conductor()));
        let exps: Vec<String> = exponents.iter().map(u64::to_string).collect();
        t.push_str(&format!("exponents: {}\n", exps.join(", ")));
        if !atoms.is_empty() {
            let a: Vec<String> = atoms.iter().map(Rational::to_string).collect();
            t.push_str(&format!("atoms: {}\n", a.join(", ")));
        }
        if let Some(e) = elasticity_text(&el) {
            t.push_str(&format!("elasticity: {e}\n"));
        }
        Ok(t)
    }
}

fn run_member(s: &Semiring, x: &Rational, out: &OutputOpts) -> Result<String, Failure> {
    let z = s.member(x).map_err(|e| fail(out.json, "member", &e))?;
    if out.json {
        let mut body = Map::new();
        body.insert("element".into(), render::rat(x));
        body.insert("member".into(), json!(z.is_some()));
        body.insert(
            "shortest".into(),
            z.as_ref().map(render::fac).unwrap_or(Value::Null),
        );
        Ok(render::envelope("member", s, body))
    } else {
        let mut t = format!("element: {x}\nmember: {}\n", render::yes_no(z.is_some()));
        if let Some(z) = z {
            t.push_str(&format!("shortest: {}\n", render::fac_text(&z)));
        }
        Ok(t)
    }
}

fn run_factorize(
    s: &Semiring,
    x: &Rational,
    caps: &SearchCaps,
    out: &OutputOpts,
) -> Result<String, Failure> {
    let set = s
        .factorizations(x, &caps.to_caps())
        .map_err(|e| fail(out.json, "factorize", &e))?;
    let member = s.member(x).map_err(|e| fail(out.json, "factorize", &e))?.is_some();
    if out.json {
        let mut body = Map::new();
        body.insert("element".into(), render::rat(x));
        body.insert("member".into(), json!(member));
        body.insert("count".into(), json!(set.items.len()));
        body.insert("complete".into(), json!(set.complete));
        body.insert("cap_too_small".into(), json!(set.cap_too_small));
        body.insert("budget_exhausted".into(), json!(set.budget_exhausted));
        body.insert(
            "items".into(),
            Value::Array(set.items.iter().map(render::fac).collect()),
        );
        body.insert("caps".into(), caps.as_json());
        Ok(render::envelope("factorize", s, body))
    } else {
        let mut t = format!(
            "element: {x}\nmember: {}\ncount: {}\ncomplete: {}\n",
            render::yes_no(member),
            set.items.len(),
            render::yes_no(set.complete),
        );
        for z in &set.items {
            t.push_str(&format!("{}\n", render::fac_text(z)));
        }
        Ok(t)
    }
}

fn run_lengths(
    s: &Semiring,
    x: &Rational,
    caps: &SearchCaps,
    out: &OutputOpts,
) -> Result<String, Failure> {
    let ls = length_set(s, x, &caps.to_caps()).map_err(|e| fail(out.json, "lengths", &e))?;
    if !ls.member {
        return Err(domain_failure(
            out.json,
            "lengths",
            "not-member",
            "element is not a member of the semiring",
        ));
    }
    let el = elasticity_value(s, Some(x));
    if out.json {
        let mut body = Map::new();
        body.insert("element".into(), render::rat(x));
        body.insert("lengths".into(), render::bigs(&ls.lengths));
        body.insert("complete".into(), json!(ls.complete));
        body.insert("exact_below".into(), render::big_opt(&ls.exact_below));
        body.insert(
            "min".into(),
            ls.lengths.iter().next().map(render::big).unwrap_or(Value::Null),
        );
        body.insert(
            "max".into(),
            if ls.complete {
                ls.lengths.iter().last().map(render::big).unwrap_or(Value::Null)
            } else {
                Value::Null
            },
        );
        body.insert("elasticity".into(), elasticity_json(&el));
        body.insert("caps".into(), caps.as_json());
        Ok(render::envelope("lengths", s, body))
    } else {
        let mut t = format!(
            "element: {x}\nlengths: {}\ncomplete: {}\n",
            render::join_bigs(&ls.lengths),
            render::yes_no(ls.complete),
        );
        if let Some(b) = &ls.exact_below {
            t.push_str(&format!("exact below: {b}\n"));
        }
        if let Some(e) = elasticity_text(&el) {
            t.push_str(&format!("elasticity: {e}\n"));
        }
        Ok(t)
    }
}

fn run_delta(s: &Semiring, caps: &SearchCaps, out: &OutputOpts) -> Result<String, Failure> {
    let rep = delta_semiring(s, caps.index_cap, &caps.to_caps())
        .map_err(|e| fail(out.json, "delta", &e))?;
    if out.json {
        let mut body = Map::new();
        body.insert("index_cap".into(), json!(caps.index_cap));
        body.insert("proven".into(), render::bigs(&rep.proven));
        body.insert("lower_family".into(), render::bigs(&rep.lower_family));
        body.insert("interval_min".into(), render::big(&rep.interval_min));
        body.insert("interval_max".into(), render::big(&rep.interval_max));
        let witnesses: Vec<Value> = rep
            .witnesses
            .iter()
            .map(|w| {
                json!({
                    "value": render::rat(&w.value),
                    "lengths": render::bigs(&w.lengths),
                    "gaps": render::bigs(&w.gaps),
                    "complete": w.complete,
                })
            })
            .collect();
        body.insert("witnesses".into(), Value::Array(witnesses));
        body.insert("caps".into(), caps.as_json());
        Ok(render::envelope("delta", s, body))
    } else {
        let mut t = format!(
            "proven: {}\ninterval: [{}, {}]\n",
            render::join_bigs(&rep.proven),
            rep.interval_min,
            rep.interval_max,
        );
        if !rep.lower_family.is_empty() {
            t.push_str(&format!("family lower bounds: {}\n", render::join_bigs(&rep.lower_family)));
        }
        for w in &rep.witnesses {
            t.push_str(&format!(
                "witness {}: lengths {}; gaps {}{}\n",
                w.value,
                render::join_bigs(&w.lengths),
                render::join_bigs(&w.gaps),
                if w.complete { "" } else { " (partial)" },
            ));
        }
        Ok(t)
    }
}

fn run_catenary(
    s: &Semiring,
    element: Option<&Rational>,
    caps: &SearchCaps,
    out: &OutputOpts,
) -> Result<String, Failure> {
    match element {
        None => {
            let v = catenary_semiring(s);
            if out.json {
                let mut body = Map::new();
                body.insert("scope".into(), json!("semiring"));
                body.insert("value".into(), render::big(&v));
                body.insert("exact".into(), json!(true));
                Ok(render::envelope("catenary", s, body))
            } else {
                Ok(format!("{v}\n"))
            }
        }
        Some(x) => {
            let member = s.member(x).map_err(|e| fail(out.json, "catenary", &e))?.is_some();
            if !member {
                return Err(domain_failure(
                    out.json,
                    "catenary",
                    "not-member",
                    "element is not a member of the semiring",
                ));
            }
            let set = s
                .factorizations(x, &caps.to_caps())
                .map_err(|e| fail(out.json, "catenary", &e))?;
            let c = catenary_element(&set);
            if out.json {
                let mut body = Map::new();
                body.insert("scope".into(), json!("element"));
                body.insert("element".into(), render::rat(x));
                body.insert("value".into(), render::big(&c.value));
                body.insert("exact".into(), json!(c.exact));
                body.insert("complete".into(), json!(set.complete));
                body.insert("caps".into(), caps.as_json());
                Ok(render::envelope("catenary", s, body))
            } else if c.exact {
                Ok(format!("{}\n", c.value))
            } else {
                Ok(format!("{} (incomplete)\n", c.value))
            }
        }
    }
}

fn run_betti(s: &Semiring, count: usize, out: &OutputOpts) -> Result<String, Failure> {
    let items = betti_elements(s, count).map_err(|e| fail(out.json, "betti", &e))?;
    if out.json {
        let mut body = Map::new();
        body.insert("requested".into(), json!(count));
        let rendered: Vec<Value> = items
            .iter()
            .map(|b| {
                json!({
                    "value": render::rat(&b.value),
                    "index": b.index,
                    "lower": render::fac(&b.lower),
                    "upper": render::fac(&b.upper),
                })
            })
            .collect();
        body.insert("items".into(), Value::Array(rendered));
        Ok(render::envelope("betti", s, body))
    } else {
        let mut t = String::new();
        for (i, b) in items.iter().enumerate() {
            t.push_str(&format!(
                "b[{i}]: {} (index {}) {} ~ {}\n",
                b.value,
                b.index,
                render::fac_text(&b.lower),
                render::fac_text(&b.upper),
            ));
        }
        Ok(t)
    }
}

fn run_uk(s: &Semiring, k: u64, caps: &SearchCaps, out: &OutputOpts) -> Result<String, Failure> {
    let u = union_k(s, k, caps.index_cap, &caps.to_caps()).map_err(|e| fail(out.json, "uk", &e))?;
    if out.json {
        let mut body = Map::new();
        body.insert("k".into(), json!(k));
        body.insert("atom_index_cap".into(), json!(u.atom_index_cap));
        body.insert("lengths".into(), render::bigs(&u.lengths));
        body.insert("complete".into(), json!(u.complete));
        body.insert("exact_below".into(), render::big_opt(&u.exact_below));
        body.insert("claimed_difference".into(), render::big(&u.claimed_difference));
        body.insert("caps".into(), caps.as_json());
        Ok(render::envelope("uk", s, body))
    } else {
        let mut t = format!(
            "k: {k}\nlengths: {}\ncomplete: {}\n",
            render::join_bigs(&u.lengths),
            render::yes_no(u.complete),
        );
        if let Some(b) = &u.exact_below {
            t.push_str(&format!("exact below: {b}\n"));
        }
        t.push_str(&format!("difference: {}\n", u.claimed_difference));
        Ok(t)
    }
}

fn run_omega(s: &Semiring, atom: usize, caps: &SearchCaps, out: &OutputOpts) -> Result<String, Failure> {
    let res = omega(s, atom, caps.exp_cap, caps.size_cap, caps.budget)
        .map_err(|e| fail(out.json, "omega", &e))?;
    let status = match res.status {
        OmegaStatus::Infinite => "infinite",
        OmegaStatus::Finite => "finite",
        OmegaStatus::BoundedEstimate => "bounded-estimate",
    };
    if out.json {
        let mut body = Map::new();
        body.insert("atom".into(), json!(atom));
        body.insert("exponent".into(), json!(s.monoid().element(atom)));
        body.insert("status".into(), json!(status));
        body.insert("lower".into(), render::big(&res.lower));
        body.insert("upper".into(), render::big_opt(&res.upper));
        body.insert(
            "witness".into(),
            res.witness.as_ref().map(render::fac).unwrap_or(Value::Null),
        );
        body.insert("caps".into(), caps.as_json());
        Ok(render::envelope("omega", s, body))
    } else {
        let mut t = format!(
            "atom: {atom}\nexponent: {}\nstatus: {status}\nlower: {}\n",
            s.monoid().element(atom),
            res.lower,
        );
        if let Some(u) = &res.upper {
            t.push_str(&format!("upper: {u}\n"));
        }
        if let Some(w) = &res.witness {
            t.push_str(&format!("witness: {}\n", render::fac_text(w)));
        }
        Ok(t)
    }
}

fn run_classify(s: &Semiring, out: &OutputOpts) -> Result<String, Failure> {
    let f = classify(s);
    let el = elasticity_value(s, None);
    if out.json {
        let mut body = Map::new();
        body.insert("class".into(), json!(render::class_name(s.class())));
        body.insert("atomic".into(), json!(f.atomic));
        body.insert("accp".into(), json!(f.accp));
        body.insert("ffm_known".into(), json!(f.ffm_known));
        body.insert("locally_tame".into(), json!(f.locally_tame));
        body.insert("globally_tame".into(), json!(f.globally_tame));
        body.insert("accp_presentable".into(), json!(f.accp_presentable));
        body.insert("elasticity".into(), elasticity_json(&el));
        Ok(render::envelope("classify", s, body))
    } else {
        let mut t = format!(
            "class: {}\natomic: {}\naccp: {}\nfinite factorizations known: {}\nlocally tame: {}\nglobally tame: {}\naccp presentable: {}\n",
            render::class_name(s.class()),
            render::yes_no(f.atomic),
            render::yes_no(f.accp),
            render::yes_no(f.ffm_known),
            render::yes_no(f.locally_tame),
            render::yes_no(f.globally_tame),
            render::yes_no(f.accp_presentable),
        );
        if let Some(e) = elasticity_text(&el) {
            t.push_str(&format!("elasticity: {e}\n"));
        }
        Ok(t)
    }
}

fn dispatch(cmd: Cmd) -> Result<String, Failure> {
    match cmd {
        Cmd::Info { inst, out } => {
            let s = build(&inst, out.json, "info")?;
            let key = cache_key("info", &s, None, "-", None, out.json);
            with_cache(key, &out, || run_info(&s, &out))
        }
        Cmd::Member { inst, element, out } => {
            let s = build(&inst, out.json, "member")?;
            let x = element_of(&s, &element, out.json, "member")?;
            let key = cache_key("member", &s, Some(&x), "-", None, out.json);
            with_cache(key, &out, || run_member(&s, &x, &out))
        }
        Cmd::Factorize { inst, element, caps, out } => {
            let s = build(&inst, out.json, "factorize")?;
            let x = element_of(&s, &element, out.json, "factorize")?;
            let key = cache_key("factorize", &s, Some(&x), "-", Some(&caps), out.json);
            with_cache(key, &out, || run_factorize(&s, &x, &caps, &out))
        }
        Cmd::Lengths { inst, element, caps, out } => {
            let s = build(&inst, out.json, "lengths")?;
            let x = element_of(&s, &element, out.json, "lengths")?;
            let key = cache_key("lengths", &s, Some(&x), "-", Some(&caps), out.json);
            with_cache(key, &out, || run_lengths(&s, &x, &caps, &out))
        }
        Cmd::Delta { inst, caps, out } => {
            let s = build(&inst, out.json, "delta")?;
            let key = cache_key("delta", &s, None, "-", Some(&caps), out.json);
            with_cache(key, &out, || run_delta(&s, &caps, &out))
        }
        Cmd::Catenary { inst, element, caps, out } => {
            let s = build(&inst, out.json, "catenary")?;
            let x = match &element {
                Some(e) => Some(element_of(&s, e, out.json, "catenary")?),
                None => None,
            };
            let key = cache_key("catenary", &s, x.as_ref(), "-", Some(&caps), out.json);
            with_cache(key, &out, || run_catenary(&s, x.as_ref(), &caps, &out))
        }
        Cmd::Betti { inst, count, out } => {
            let s = build(&inst, out.json, "betti")?;
            let key = cache_key("betti", &s, None, &format!("count={count}"), None, out.json);
            with_cache(key, &out, || run_betti(&s, count, &out))
        }
        Cmd::Uk { inst, k, caps, out } => {
            let s = build(&inst, out.json, "uk")?;
            let key = cache_key("uk", &s, None, &format!("k={k}"), Some(&caps), out.json);
            with_cache(key, &out, || run_uk(&s, k, &caps, &out))
        }
        Cmd::Omega { inst, atom, caps, out } => {
            let s = build(&inst, out.json, "omega")?;
            let key = cache_key("omega", &s, None, &format!("atom={atom}"), Some(&caps), out.json);
            with_cache(key, &out, || run_omega(&s, atom, &caps, &out))
        }
        Cmd::Classify { inst, out } => {
            let s = build(&inst, out.json, "classify")?;
            let key = cache_key("classify", &s, None, "-", None, out.json);
            with_cache(key, &out, || run_classify(&s, &out))
        }
        Cmd::Verify { pool, json } => {
            let instances = if pool.is_empty() {
                verify::default_pool()
            } else {
                let mut v = Vec::new();
                for entry in &pool {
                    v.push(verify::parse_pool_entry(entry).map_err(|e| fail(json, "verify", &e))?);
                }
                v
            };
            let (text, code) = verify::run(&instances, json);
            if code == 0 {
                Ok(text)
            } else {
                Err(Failure {
                    code: code as u8,
                    stdout: Some(text),
                    stderr: None,
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(o) = f.stdout {
                print!("{o}");
            }
            if let Some(e) = f.stderr {
                eprintln!("{e}");
            }
            ExitCode::from(f.code)
        }
    }
}
