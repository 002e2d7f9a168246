//! One adapter per subcommand. Each loads its inputs, calls the library and
//! shapes the answer as JSON plus table lines.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde_json::{json, Value};
use supermod::cone::{extremality, ExtremalityReport};
use supermod::marginals::{
    core_constraints, core_vertices, game_from_configuration, lower_envelope, payoff_array,
    tight_families, unboundedness_witness,
};
use supermod::{
    cone_dimension, extreme_rays, face_compare, facet_triples, Coalition, DownSetLattice,
    ExtremalityMethod, Permutation, RatGame, Rational,
};

use crate::io::Loader;
use crate::render::{self, coalition, game_line, set_line, to_value};
use crate::{Check, CliError, Command, ConeCmd, CoreCmd, GameClass, GameCmd, LatticeCmd, Method, Outcome, PosetCmd};

pub fn dispatch(command: &Command, loader: &mut Loader) -> Result<Outcome, CliError> {
    match command {
        Command::Poset(PosetCmd::Show { poset }) => poset_show(&loader.poset(poset)?),
        Command::Lattice(c) => match c {
            LatticeCmd::Downsets { poset } => downsets(&loader.lattice(poset)?),
            LatticeCmd::Chains { poset } => chains(&loader.lattice(poset)?),
            LatticeCmd::Moebius { poset, from, to } => {
                let l = loader.lattice(poset)?;
                let (x, y) = (Coalition::parse(from, l.n())?, Coalition::parse(to, l.n())?);
                lattice_moebius(&l, x, y)
            }
        },
        Command::Game(c) => match c {
            GameCmd::Check { game, class } => game_check(&loader.game(game)?, *class),
            GameCmd::Moebius { game } => game_moebius(&loader.game(game)?),
            GameCmd::Normalize { game } => game_normalize(&loader.game(game)?),
        },
        Command::Core(c) => match c {
            CoreCmd::Vertices { game } => vertices(&loader.game(game)?),
            CoreCmd::Marginals { game } => marginals(&loader.game(game)?),
            CoreCmd::Tight { game, perm } => {
                let perm = perm.as_deref().map(str::parse::<Permutation>).transpose()?;
                tight(&loader.game(game)?, perm.as_ref())
            }
            CoreCmd::Envelope { game, coalition } => {
                let v = loader.game(game)?;
                let a = Coalition::parse(coalition, v.lattice().n())?;
                envelope(&v, a)
            }
            CoreCmd::Witness { poset } => witness(&loader.lattice(poset)?),
            CoreCmd::Hrep { game } => hrep(&loader.game(game)?),
            CoreCmd::Reconstruct { poset, configuration } => {
                let l = loader.lattice(poset)?;
                let x = loader.configuration(configuration, l.n())?;
                let g = game_from_configuration(&l, &x)?;
                let table = vec![format!("reconstructed: {}", game_line(&g))];
                Ok(Outcome { results: json!({ "game": render::game(&g) }), table, checks: Vec::new() })
            }
        },
        Command::Cone(c) => match c {
            ConeCmd::IsExtreme { game, method } => is_extreme(&loader.game(game)?, *method),
            ConeCmd::Rays { poset } => rays(&loader.lattice(poset)?),
            ConeCmd::Facets { poset } => facets(&loader.lattice(poset)?),
            ConeCmd::Dim { poset } => dim(&loader.lattice(poset)?),
            ConeCmd::FaceCompare { first, second } => {
                let v = loader.game(first)?;
                let w = loader.game(second)?;
                let w = if w.lattice().same_as(v.lattice()) {
                    RatGame::from_values(v.lattice(), w.values().to_vec())?
                } else {
                    return Err(supermod::Error::LatticeMismatch.into());
                };
                face(&v, &w)
            }
        },
        Command::ReproducePaper { .. } => unreachable!("handled by the caller"),
    }
}

pub fn poset_show(p: &supermod::Poset) -> Result<Outcome, CliError> {
    let n = p.n();
    let minimal: Vec<usize> = (0..n).filter(|&i| (0..n).all(|j| !p.lt(j, i))).map(|i| i + 1).collect();
    let results = json!({
        "n": n,
        "covers": p.covers(),
        "minimal": minimal,
        "flat": p.is_flat(),
    });
    let mut table = vec![format!("players: {n}")];
    table.extend(p.covers().iter().map(|&(i, j)| format!("{i} ≺ {j}")));
    Ok(Outcome { results, table, checks: Vec::new() })
}

pub fn downsets(l: &Arc<DownSetLattice>) -> Result<Outcome, CliError> {
    let joins: Vec<Value> = l
        .join_irreducibles()
        .iter()
        .map(|j| {
            json!({
                "player": j.player + 1,
                "element": coalition(l.element(j.element)),
                "predecessor": coalition(l.element(j.predecessor)),
            })
        })
        .collect();
    let results = json!({
        "size": l.len(),
        "elements": l.elements().iter().map(|&a| coalition(a)).collect::<Vec<_>>(),
        "join_irreducibles": joins,
        "boolean": l.is_boolean(),
    });
    let table = vec![
        format!("|L| = {}", l.len()),
        format!("L = {}", set_line(l, l.elements().iter().copied())),
        format!(
            "join-irreducibles = {}",
            set_line(l, l.join_irreducibles().iter().map(|j| l.element(j.element)))
        ),
        format!("boolean: {}", l.is_boolean()),
    ];
    Ok(Outcome { results, table, checks: Vec::new() })
}

pub fn chains(l: &Arc<DownSetLattice>) -> Result<Outcome, CliError> {
    let chains = l.maximal_chains()?;
    let list: Vec<Value> = chains
        .iter()
        .map(|c| json!({ "perm": c.perm.to_string(), "sets": c.sets.iter().map(|&s| coalition(s)).collect::<Vec<_>>() }))
        .collect();
    let table = chains
        .iter()
        .map(|c| {
            let sets: Vec<String> = c.sets.iter().map(|&s| s.shorthand(l.n())).collect();
            format!("{}  {}", c.perm, sets.join(" ⊂ "))
        })
        .collect();
    Ok(Outcome { results: json!({ "count": chains.len(), "chains": list }), table, checks: Vec::new() })
}

pub fn lattice_moebius(l: &Arc<DownSetLattice>, x: Coalition, y: Coalition) -> Result<Outcome, CliError> {
    let mu = l.mobius(x, y)?;
    let results = json!({ "from": coalition(x), "to": coalition(y), "mu": mu });
    let table = vec![format!("μ({}, {}) = {mu}", x.shorthand(l.n()), y.shorthand(l.n()))];
    Ok(Outcome { results, table, checks: Vec::new() })
}

fn class_name(class: GameClass) -> &'static str {
    match class {
        GameClass::Supermodular => "supermodular",
        GameClass::Modular => "modular",
        GameClass::Monotone => "monotone",
        GameClass::Nonnegative => "nonnegative",
        GameClass::ZeroNormalized => "zero-normalized",
    }
}

pub fn game_check(v: &RatGame, class: GameClass) -> Result<Outcome, CliError> {
    let holds = match class {
        GameClass::Supermodular => v.is_supermodular(),
        GameClass::Modular => v.is_modular(),
        GameClass::Monotone => v.is_monotone(),
        GameClass::Nonnegative => v.is_nonnegative(),
        GameClass::ZeroNormalized => v.is_zero_normalized(),
    };
    let name = class_name(class);
    let mut results = json!({ "class": name, "holds": holds });
    let mut table = vec![format!("{name}: {holds}")];
    if class == GameClass::Supermodular {
        if let Some((a, b)) = v.supermodular_violation() {
            results["violation"] = json!([coalition(a), coalition(b)]);
            let n = v.lattice().n();
            table.push(format!("violated at A = {}, B = {}", a.shorthand(n), b.shorthand(n)));
        }
    }
    Ok(Outcome { results, table, checks: vec![Check::new(name, true, holds)] })
}

pub fn game_moebius(v: &RatGame) -> Result<Outcome, CliError> {
    let hat = v.mobius_transform();
    let results = json!({ "mobius": render::values(&hat) });
    Ok(Outcome { results, table: vec![format!("v̂: {}", game_line(&hat))], checks: Vec::new() })
}

pub fn game_normalize(v: &RatGame) -> Result<Outcome, CliError> {
    let (w, m) = v.zero_normalize();
    let results = json!({ "normalized": render::game(&w), "modular": render::game(&m) });
    let table = vec![format!("v* = {}", game_line(&w)), format!("m = {}", game_line(&m))];
    Ok(Outcome { results, table, checks: Vec::new() })
}

pub fn vertices(v: &RatGame) -> Result<Outcome, CliError> {
    let vs = core_vertices(v)?;
    let results = json!({ "count": vs.len(), "vertices": vs.iter().map(render::payoff).collect::<Vec<_>>() });
    let table = vs.iter().map(|x| x.to_string()).collect();
    Ok(Outcome { results, table, checks: Vec::new() })
}

pub fn marginals(v: &RatGame) -> Result<Outcome, CliError> {
    let x = payoff_array(v)?;
    let results = json!({ "marginals": to_value(&x.entries) });
    let table = x.entries.iter().map(|(p, x)| format!("{p}  {x}")).collect();
    Ok(Outcome { results, table, checks: Vec::new() })
}

pub fn tight(v: &RatGame, perm: Option<&Permutation>) -> Result<Outcome, CliError> {
    let l = v.lattice();
    if let Some(p) = perm {
        l.chain_of(p)?;
    }
    let families: Vec<_> = tight_families(v)?
        .into_iter()
        .filter(|f| perm.is_none_or(|p| f.perm == *p))
        .collect();
    let list: Vec<Value> = families
        .iter()
        .map(|f| {
            json!({
                "perm": f.perm.to_string(),
                "tight": f.tight.iter().map(|&a| coalition(a)).collect::<Vec<_>>(),
                "zero_players": coalition(f.zero_players),
            })
        })
        .collect();
    let table = families
        .iter()
        .map(|f| {
            let zeros: Vec<String> = f.zero_players.players_1based().iter().map(|p| p.to_string()).collect();
            format!("{}  T = {}  N = {{{}}}", f.perm, set_line(l, f.tight.iter().copied()), zeros.join(", "))
        })
        .collect();
    Ok(Outcome { results: json!({ "families": list }), table, checks: Vec::new() })
}

pub fn envelope(v: &RatGame, a: Coalition) -> Result<Outcome, CliError> {
    let env = lower_envelope(v, a)?;
    let value = v.value(a)?.clone();
    let results = json!({
        "coalition": coalition(a),
        "envelope": env.to_string(),
        "value": value.to_string(),
        "equal": env == value,
    });
    let table = vec![format!("min_π x(A) = {env}, v({}) = {value}", a.shorthand(v.lattice().n()))];
    Ok(Outcome { results, table, checks: Vec::new() })
}

pub fn witness(l: &Arc<DownSetLattice>) -> Result<Outcome, CliError> {
    let x = unboundedness_witness::<Rational>(l);
    let results = json!({
        "bounded": x.is_none(),
        "direction": x.as_ref().map(render::payoff),
    });
    let table = vec![match &x {
        Some(x) => format!("core is unbounded along {x}"),
        None => "core is bounded (Boolean lattice)".to_string(),
    }];
    Ok(Outcome { results, table, checks: Vec::new() })
}

pub fn hrep(v: &RatGame) -> Result<Outcome, CliError> {
    let rows = core_constraints(v);
    let n = v.lattice().n();
    let table = rows
        .iter()
        .map(|r| format!("x({}) {} {}", r.coalition.shorthand(n), if r.equality { "=" } else { ">=" }, r.value))
        .collect();
    Ok(Outcome { results: json!({ "constraints": to_value(&rows) }), table, checks: Vec::new() })
}

fn report_value(r: &ExtremalityReport) -> Value {
    to_value(r)
}

pub fn is_extreme(v: &RatGame, method: Method) -> Result<Outcome, CliError> {
    let methods: &[ExtremalityMethod] = match method {
        Method::System => &[ExtremalityMethod::System],
        Method::Games => &[ExtremalityMethod::Games],
        Method::Both => &[ExtremalityMethod::System, ExtremalityMethod::Games],
    };
    if !v.is_supermodular() {
        let results = json!({ "supermodular": false, "extreme": false });
        return Ok(Outcome {
            results,
            table: vec!["not supermodular".to_string()],
            checks: vec![Check::new("supermodular", true, false)],
        });
    }
    let reports = methods.iter().map(|&m| extremality(v, m)).collect::<Result<Vec<_>, _>>()?;
    let extreme = reports.iter().all(|r| r.extreme);
    let mut results = json!({
        "supermodular": true,
        "extreme": extreme,
        "reports": reports.iter().map(report_value).collect::<Vec<_>>(),
    });
    let mut table = Vec::new();
    let mut checks = Vec::new();
    for r in &reports {
        let name = match r.method {
            ExtremalityMethod::System => "system",
            ExtremalityMethod::Games => "games",
        };
        table.push(format!("{name}: extreme = {}, solution dimension = {}", r.extreme, r.solution_dim));
        checks.push(Check::new(format!("extreme ({name})"), true, r.extreme));
    }
    if reports.iter().any(|r| r.normalized_is_zero) {
        let note = "the 0-normalized game is zero, so v is modular and spans no extreme ray";
        results["note"] = json!(note);
        table.push(note.to_string());
    }
    Ok(Outcome { results, table, checks })
}

pub fn rays(l: &Arc<DownSetLattice>) -> Result<Outcome, CliError> {
    let rays = extreme_rays::<Rational>(l)?;
    let results = json!({
        "count": rays.len(),
        "rays": rays.iter().map(render::values).collect::<Vec<_>>(),
    });
    let mut table = vec![format!("{} extreme rays", rays.len())];
    table.extend(rays.iter().map(game_line));
    Ok(Outcome { results, table, checks: Vec::new() })
}

pub fn facets(l: &Arc<DownSetLattice>) -> Result<Outcome, CliError> {
    let triples = facet_triples(l);
    let list: Vec<Value> = triples
        .iter()
        .map(|t| {
            let mut v = to_value(t);
            v["inequality"] = json!(t.render(l.n()));
            v
        })
        .collect();
    let mut table = vec![format!("{} facets", triples.len())];
    table.extend(triples.iter().map(|t| t.render(l.n())));
    Ok(Outcome { results: json!({ "count": triples.len(), "facets": list }), table, checks: Vec::new() })
}

pub fn dim(l: &Arc<DownSetLattice>) -> Result<Outcome, CliError> {
    let d = cone_dimension(l)?;
    let ambient = l.len() - 1;
    let results = json!({ "dimension": d, "ambient": ambient, "modular": l.n() });
    let table = vec![format!("dimension {d} in ambient dimension {ambient}")];
    Ok(Outcome { results, table, checks: Vec::new() })
}

pub fn face(v: &RatGame, w: &RatGame) -> Result<Outcome, CliError> {
    let rel = face_compare(v, w)?;
    let results = json!({ "relation": to_value(&rel) });
    let text = results["relation"].as_str().unwrap_or_default().to_string();
    Ok(Outcome { results, table: vec![format!("face(v) is {text} face(w)")], checks: Vec::new() })
}

/// Distinct tight families as shorthand lines, used by `reproduce-paper`.
pub fn tight_lines(v: &RatGame, perm: &Permutation) -> Result<Vec<String>, CliError> {
    let l = v.lattice();
    let c = l.chain_of(perm)?;
    let sets: BTreeSet<Coalition> = supermod::marginals::tight_sets(v, &c)?;
    Ok(sets.iter().map(|a| a.shorthand(l.n())).collect())
}
