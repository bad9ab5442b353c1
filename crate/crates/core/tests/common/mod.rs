//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::path::PathBuf;

use ontokit::matcher::Mapping;
use ontokit::model::{Axiom, ConceptExpression as CE, EntityKind, Ontology};
use ontokit::normalise::{LeftAtom, NormalisedAxiom, RightAtom};
use ontokit::Iri;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
}

pub fn read_data(name: &str) -> String {
    std::fs::read_to_string(data_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every well-formed ontology file of the corpus.
pub fn corpus() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(data_dir())
        .unwrap()
        .filter_map(|e| {
            let path = e.ok()?.path();
            (path.extension()? == "ofn").then(|| {
                let name = path.file_name().unwrap().to_string_lossy().into_owned();
                (name, std::fs::read_to_string(&path).unwrap())
            })
        })
        .collect();
    out.sort();
    out
}

pub fn iri(name: &str) -> Iri {
    Iri::new(format!("http://test.example/o#{name}")).unwrap()
}

pub fn concept_names(n: usize) -> Vec<Iri> {
    (0..n).map(|i| iri(&format!("C{i}"))).collect()
}

pub fn role_names(n: usize) -> Vec<Iri> {
    (0..n).map(|i| iri(&format!("r{i}"))).collect()
}

pub fn ontology_of(axioms: impl IntoIterator<Item = Axiom>, concepts: &[Iri]) -> Ontology {
    let mut o = Ontology::new();
    for c in concepts {
        o.declare(EntityKind::Class, c.clone());
    }
    for a in axioms {
        o.add_axiom(a).unwrap();
    }
    o
}

// ---------------------------------------------------------------------------
// Random EL input

pub fn random_el_expression(
    rng: &mut impl Rng,
    concepts: &[Iri],
    roles: &[Iri],
    depth: usize,
) -> CE {
    let leaf = |rng: &mut dyn rand::RngCore| -> CE {
        match rng.gen_range(0..20) {
            0 => CE::Top,
            1 => CE::Bottom,
            _ => CE::Named(concepts.choose(rng).unwrap().clone()),
        }
    };
    if depth == 0 || rng.gen_bool(0.45) {
        return leaf(rng);
    }
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(2..=3);
        CE::And(
            (0..n)
                .map(|_| random_el_expression(rng, concepts, roles, depth - 1))
                .collect(),
        )
    } else {
        let r = roles.choose(rng).unwrap().clone();
        CE::Some(
            r,
            Box::new(random_el_expression(rng, concepts, roles, depth - 1)),
        )
    }
}

/// At most `max_concepts` concepts and `max_axioms` axioms, including the
/// occasional role inclusion, role chain and equivalence.
pub fn random_el_ontology(rng: &mut impl Rng, max_concepts: usize, max_axioms: usize) -> Ontology {
    let concepts = concept_names(rng.gen_range(1..=max_concepts));
    let roles = role_names(rng.gen_range(1..=3));
    let mut axioms = Vec::new();
    for _ in 0..rng.gen_range(0..=max_axioms) {
        let ax = match rng.gen_range(0..12) {
            0 => Axiom::SubObjectPropertyOf(
                roles.choose(rng).unwrap().clone(),
                roles.choose(rng).unwrap().clone(),
            ),
            1 => Axiom::SubPropertyChainOf(
                [
                    roles.choose(rng).unwrap().clone(),
                    roles.choose(rng).unwrap().clone(),
                ],
                roles.choose(rng).unwrap().clone(),
            ),
            2 | 3 => Axiom::EquivalentClasses(vec![
                CE::Named(concepts.choose(rng).unwrap().clone()),
                random_el_expression(rng, &concepts, &roles, 2),
            ]),
            _ => Axiom::SubClassOf(
                random_el_expression(rng, &concepts, &roles, 2),
                random_el_expression(rng, &concepts, &roles, 2),
            ),
        };
        axioms.push(ax);
    }
    let mut o = Ontology::new();
    for c in &concepts {
        o.declare(EntityKind::Class, c.clone());
    }
    for a in axioms {
        // malformed shapes (e.g. a single-member equivalence after dedup) are skipped
        let _ = o.add_axiom(a);
    }
    o
}

pub fn random_normalised(
    rng: &mut impl Rng,
    max_concepts: usize,
    max_axioms: usize,
) -> (Vec<NormalisedAxiom>, Vec<Iri>) {
    let concepts = concept_names(rng.gen_range(1..=max_concepts));
    let roles = role_names(rng.gen_range(1..=3));
    let left = |rng: &mut dyn rand::RngCore| {
        if rng.gen_range(0..8) == 0 {
            LeftAtom::Top
        } else {
            LeftAtom::Named(concepts.choose(rng).unwrap().clone())
        }
    };
    let right = |rng: &mut dyn rand::RngCore| {
        if rng.gen_range(0..10) == 0 {
            RightAtom::Bottom
        } else {
            RightAtom::Named(concepts.choose(rng).unwrap().clone())
        }
    };
    let named = |rng: &mut dyn rand::RngCore| concepts.choose(rng).unwrap().clone();
    let role = |rng: &mut dyn rand::RngCore| roles.choose(rng).unwrap().clone();
    let mut out = Vec::new();
    for _ in 0..rng.gen_range(0..=max_axioms) {
        let ax = match rng.gen_range(0..12) {
            0..=2 => NormalisedAxiom::AtomicSub(left(rng), right(rng)),
            3 | 4 => NormalisedAxiom::ConjSub(left(rng), left(rng), right(rng)),
            5 | 6 => NormalisedAxiom::ExistsRight(left(rng), role(rng), named(rng)),
            7 | 8 => {
                NormalisedAxiom::ExistsLeft(role(rng), LeftAtom::Named(named(rng)), right(rng))
            }
            9 => NormalisedAxiom::RoleSub(role(rng), role(rng)),
            _ => NormalisedAxiom::RoleChain(role(rng), role(rng), role(rng)),
        };
        out.push(ax);
    }
    (out, concepts)
}

/// Named-only DAG: edges only run from later to earlier concepts.
pub fn random_dag(rng: &mut impl Rng, max_concepts: usize) -> Ontology {
    let mut concepts = concept_names(rng.gen_range(1..=max_concepts));
    concepts.shuffle(rng);
    let density = rng.gen_range(0.05..0.5);
    let mut axioms = Vec::new();
    for i in 0..concepts.len() {
        for j in 0..i {
            if rng.gen_bool(density) {
                axioms.push(Axiom::SubClassOf(
                    CE::Named(concepts[i].clone()),
                    CE::Named(concepts[j].clone()),
                ));
            }
        }
    }
    ontology_of(axioms, &concepts)
}

/// Hierarchy with named edges, occasional cycles, equivalences, complex
/// parents and labels; used for pruning.
pub fn random_hierarchy(rng: &mut impl Rng, max_concepts: usize) -> Ontology {
    let concepts = concept_names(rng.gen_range(1..=max_concepts));
    let roles = role_names(2);
    let mut axioms = Vec::new();
    for _ in 0..rng.gen_range(0..=concepts.len() * 2) {
        let a = concepts.choose(rng).unwrap().clone();
        let b = concepts.choose(rng).unwrap().clone();
        let ax = match rng.gen_range(0..10) {
            0 => Axiom::SubClassOf(
                CE::Named(a),
                CE::some(roles.choose(rng).unwrap().clone(), CE::Named(b)),
            ),
            1 => {
                let c = concepts.choose(rng).unwrap().clone();
                Axiom::EquivalentClasses(vec![
                    CE::Named(a),
                    CE::And(vec![CE::Named(b), CE::Named(c)]),
                ])
            }
            2 if a != b => Axiom::EquivalentClasses(vec![CE::Named(a), CE::Named(b)]),
            3 => Axiom::label(a, format!("label {}", b.local_name())),
            _ => Axiom::SubClassOf(CE::Named(a), CE::Named(b)),
        };
        axioms.push(ax);
    }
    let mut o = Ontology::new();
    for c in &concepts {
        o.declare(EntityKind::Class, c.clone());
    }
    for a in axioms {
        let _ = o.add_axiom(a);
    }
    o
}

// ---------------------------------------------------------------------------
// Reasoning oracles

/// Exhaustive rule application over normal forms on boolean matrices.
/// Returns (subsumption pairs over `concepts` ∪ {⊤}, unsatisfiable concepts).
pub fn naive_normal_form_closure(
    axioms: &[NormalisedAxiom],
    concepts: &[Iri],
) -> (BTreeSet<(Iri, Iri)>, BTreeSet<Iri>) {
    let thing = Iri::thing();
    let nothing = Iri::nothing();
    let mut names: Vec<Iri> = vec![thing.clone(), nothing.clone()];
    names.extend(concepts.iter().cloned());
    let mut roles: Vec<Iri> = Vec::new();
    let touch = |i: &Iri, names: &mut Vec<Iri>| {
        if !names.contains(i) {
            names.push(i.clone());
        }
    };
    for ax in axioms {
        let mut add_role = |r: &Iri| {
            if !roles.contains(r) {
                roles.push(r.clone());
            }
        };
        match ax {
            NormalisedAxiom::ExistsRight(_, r, d) => {
                add_role(r);
                touch(d, &mut names);
            }
            NormalisedAxiom::ExistsLeft(r, _, _) => add_role(r),
            NormalisedAxiom::RoleSub(r, s) => {
                add_role(r);
                add_role(s);
            }
            NormalisedAxiom::RoleChain(r, t, s) => {
                add_role(r);
                add_role(t);
                add_role(s);
            }
            _ => {}
        }
    }
    let idx = |i: &Iri| names.iter().position(|n| n == i).unwrap();
    let l = |a: &LeftAtom| match a {
        LeftAtom::Top => 0,
        LeftAtom::Named(i) => idx(i),
    };
    let rt = |a: &RightAtom| match a {
        RightAtom::Bottom => 1,
        RightAtom::Named(i) => idx(i),
    };
    let ri = |r: &Iri| roles.iter().position(|x| x == r).unwrap();
    let n = names.len();
    let mut s = vec![vec![false; n]; n];
    let mut rel = vec![vec![vec![false; n]; n]; roles.len()];
    for c in 0..n {
        s[c][c] = true;
        s[c][0] = true;
    }
    loop {
        let mut changed = false;
        let mut set = |v: &mut bool| {
            if !*v {
                *v = true;
                changed = true;
            }
        };
        for ax in axioms {
            match ax {
                NormalisedAxiom::AtomicSub(a, b) => {
                    let (a, b) = (l(a), rt(b));
                    for c in 0..n {
                        if s[c][a] {
                            set(&mut s[c][b]);
                        }
                    }
                }
                NormalisedAxiom::ConjSub(a1, a2, b) => {
                    let (a1, a2, b) = (l(a1), l(a2), rt(b));
                    for c in 0..n {
                        if s[c][a1] && s[c][a2] {
                            set(&mut s[c][b]);
                        }
                    }
                }
                NormalisedAxiom::ExistsRight(a, r, b) => {
                    let (a, r, b) = (l(a), ri(r), idx(b));
                    for c in 0..n {
                        if s[c][a] {
                            set(&mut rel[r][c][b]);
                        }
                    }
                }
                NormalisedAxiom::ExistsLeft(r, a, b) => {
                    let (r, a, b) = (ri(r), l(a), rt(b));
                    for c in 0..n {
                        for d in 0..n {
                            if rel[r][c][d] && s[d][a] {
                                set(&mut s[c][b]);
                            }
                        }
                    }
                }
                NormalisedAxiom::RoleSub(r, t) => {
                    let (r, t) = (ri(r), ri(t));
                    for c in 0..n {
                        for d in 0..n {
                            if rel[r][c][d] {
                                set(&mut rel[t][c][d]);
                            }
                        }
                    }
                }
                NormalisedAxiom::RoleChain(r1, r2, t) => {
                    let (r1, r2, t) = (ri(r1), ri(r2), ri(t));
                    for c in 0..n {
                        for d in 0..n {
                            if !rel[r1][c][d] {
                                continue;
                            }
                            for e in 0..n {
                                if rel[r2][d][e] {
                                    set(&mut rel[t][c][e]);
                                }
                            }
                        }
                    }
                }
            }
        }
        for r in 0..roles.len() {
            for c in 0..n {
                for d in 0..n {
                    if rel[r][c][d] && s[d][1] {
                        set(&mut s[c][1]);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut covered: Vec<usize> = concepts.iter().map(idx).collect();
    covered.push(0);
    let mut pairs = BTreeSet::new();
    let mut unsat = BTreeSet::new();
    for &c in &covered {
        if s[c][1] {
            unsat.insert(names[c].clone());
        }
        for &d in &covered {
            if s[c][d] || s[c][1] {
                pairs.insert((names[c].clone(), names[d].clone()));
            }
        }
    }
    (pairs, unsat)
}

/// Completion over the subexpressions of arbitrary EL axioms, with one
/// context per subexpression. Independent of the normaliser.
pub fn expression_closure(onto: &Ontology) -> BTreeSet<(Iri, Iri)> {
    let mut gcis: Vec<(CE, CE)> = Vec::new();
    let mut role_sub: Vec<(Iri, Iri)> = Vec::new();
    let mut chains: Vec<(Iri, Iri, Iri)> = Vec::new();
    for ax in onto.axioms() {
        match ax {
            Axiom::SubClassOf(a, b) => gcis.push((a.clone(), b.clone())),
            Axiom::EquivalentClasses(ms) => {
                for a in ms {
                    for b in ms {
                        if a != b {
                            gcis.push((a.clone(), b.clone()));
                        }
                    }
                }
            }
            Axiom::SubObjectPropertyOf(r, s) => role_sub.push((r.clone(), s.clone())),
            Axiom::SubPropertyChainOf([r1, r2], s) => {
                chains.push((r1.clone(), r2.clone(), s.clone()))
            }
            _ => {}
        }
    }
    let mut exprs: Vec<CE> = vec![CE::Top, CE::Bottom];
    fn collect(e: &CE, out: &mut Vec<CE>) {
        if !out.contains(e) {
            out.push(e.clone());
        }
        match e {
            CE::And(ops) => ops.iter().for_each(|o| collect(o, out)),
            CE::Some(_, f) => collect(f, out),
            _ => {}
        }
    }
    for c in onto.concepts() {
        collect(&CE::Named(c.clone()), &mut exprs);
    }
    for (a, b) in &gcis {
        collect(a, &mut exprs);
        collect(b, &mut exprs);
    }
    let id = |e: &CE, exprs: &Vec<CE>| exprs.iter().position(|x| x == e).unwrap();
    let n = exprs.len();
    let told: Vec<(usize, usize)> = gcis
        .iter()
        .map(|(a, b)| (id(a, &exprs), id(b, &exprs)))
        .collect();
    let ands: Vec<(usize, Vec<usize>)> = (0..n)
        .filter_map(|i| match &exprs[i] {
            CE::And(ops) => Some((i, ops.iter().map(|o| id(o, &exprs)).collect())),
            _ => None,
        })
        .collect();
    let somes: Vec<(usize, Iri, usize)> = (0..n)
        .filter_map(|i| match &exprs[i] {
            CE::Some(r, f) => Some((i, r.clone(), id(f, &exprs))),
            _ => None,
        })
        .collect();
    // reflexive-transitive role hierarchy
    let mut roles: BTreeSet<Iri> = BTreeSet::new();
    for (_, r, _) in &somes {
        roles.insert(r.clone());
    }
    for (r, s) in &role_sub {
        roles.insert(r.clone());
        roles.insert(s.clone());
    }
    for (a, b, c) in &chains {
        roles.extend([a.clone(), b.clone(), c.clone()]);
    }
    let mut sup: BTreeSet<(Iri, Iri)> = roles.iter().map(|r| (r.clone(), r.clone())).collect();
    loop {
        let mut next = sup.clone();
        for (a, b) in &sup {
            for (c, d) in &role_sub {
                if b == c {
                    next.insert((a.clone(), d.clone()));
                }
            }
        }
        if next.len() == sup.len() {
            break;
        }
        sup = next;
    }
    let mut s: Vec<HashSet<usize>> = (0..n).map(|i| HashSet::from([i, 0])).collect();
    let mut links: HashMap<Iri, HashSet<(usize, usize)>> = HashMap::new();
    loop {
        let mut changed = false;
        for x in 0..n {
            let mut add: Vec<usize> = Vec::new();
            for &(a, b) in &told {
                if s[x].contains(&a) {
                    add.push(b);
                }
            }
            for (e, ops) in &ands {
                if s[x].contains(e) {
                    add.extend(ops.iter().copied());
                }
                if ops.iter().all(|o| s[x].contains(o)) {
                    add.push(*e);
                }
            }
            for (e, r, f) in &somes {
                if s[x].contains(e) {
                    for (r0, r1) in &sup {
                        if r0 == r && links.entry(r1.clone()).or_default().insert((x, *f)) {
                            changed = true;
                        }
                    }
                }
            }
            for a in add {
                changed |= s[x].insert(a);
            }
        }
        let snapshot = links.clone();
        for (r, pairs) in &snapshot {
            for &(x, y) in pairs {
                let sy = s[y].clone();
                for (e, r2, f) in &somes {
                    if r2 == r && sy.contains(f) {
                        changed |= s[x].insert(*e);
                    }
                }
                if sy.contains(&1) {
                    changed |= s[x].insert(1);
                }
            }
        }
        for (r1, r2, t) in &chains {
            let (Some(a), Some(b)) = (snapshot.get(r1), snapshot.get(r2)) else {
                continue;
            };
            let mut new = Vec::new();
            for &(x, y) in a {
                for &(y2, z) in b {
                    if y == y2 {
                        new.push((x, z));
                    }
                }
            }
            for (x, z) in new {
                for (r0, r1s) in &sup {
                    if r0 == t && links.entry(r1s.clone()).or_default().insert((x, z)) {
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut covered: Vec<(Iri, usize)> = onto
        .concepts()
        .iter()
        .map(|c| (c.clone(), id(&CE::Named(c.clone()), &exprs)))
        .collect();
    covered.push((Iri::thing(), 0));
    let mut out = BTreeSet::new();
    for (c, ci) in &covered {
        for (d, di) in &covered {
            if s[*ci].contains(di) || s[*ci].contains(&1) {
                out.insert((c.clone(), d.clone()));
            }
        }
    }
    out
}

/// Child → parent edges from named subsumptions, named equivalences and named
/// conjuncts of equivalent intersections.
pub fn named_edges(onto: &Ontology) -> BTreeSet<(Iri, Iri)> {
    let mut out = BTreeSet::new();
    for ax in onto.axioms() {
        match ax {
            Axiom::SubClassOf(CE::Named(a), CE::Named(b)) => {
                out.insert((a.clone(), b.clone()));
            }
            Axiom::EquivalentClasses(ms) => {
                for a in ms {
                    let CE::Named(a) = a else { continue };
                    for b in ms {
                        match b {
                            CE::Named(b) if a != b => {
                                out.insert((a.clone(), b.clone()));
                            }
                            CE::And(ops) => {
                                for op in ops {
                                    if let CE::Named(b) = op {
                                        out.insert((a.clone(), b.clone()));
                                    }
                                }
                            }
                            _ => {}
                        }
                    }
                }
            }
            _ => {}
        }
    }
    out
}

/// Reflexive reachability along `named_edges`.
pub fn reachability(onto: &Ontology) -> BTreeMap<Iri, BTreeSet<Iri>> {
    let edges = named_edges(onto);
    let mut out = BTreeMap::new();
    for c in onto.concepts() {
        let mut seen = BTreeSet::from([c.clone()]);
        let mut stack = vec![c.clone()];
        while let Some(x) = stack.pop() {
            for (a, b) in &edges {
                if a == &x && seen.insert(b.clone()) {
                    stack.push(b.clone());
                }
            }
        }
        out.insert(c.clone(), seen);
    }
    out
}

/// Brute-force transitive reduction of a reflexive-transitive relation over
/// `nodes` (which must include ⊤); concepts with no other parent hang off ⊤.
pub fn transitive_reduction(
    pairs: &BTreeSet<(Iri, Iri)>,
    nodes: &BTreeSet<Iri>,
) -> BTreeSet<(Iri, Iri)> {
    let holds = |a: &Iri, b: &Iri| pairs.contains(&(a.clone(), b.clone()));
    let mut out = BTreeSet::new();
    for c in nodes {
        if c.is_thing() {
            continue;
        }
        for d in nodes {
            if d == c || !holds(c, d) {
                continue;
            }
            let intermediate = nodes
                .iter()
                .any(|e| e != c && e != d && !e.is_thing() && holds(c, e) && holds(e, d));
            if !intermediate {
                out.insert((c.clone(), d.clone()));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// String oracles

/// Textbook O(nm) Levenshtein distance over chars.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut d = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for j in 0..=b.len() {
        d[0][j] = j;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let sub = d[i - 1][j - 1] + usize::from(a[i - 1] != b[j - 1]);
            d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    d[a.len()][b.len()]
}

/// Words and three-character windows of a label, computed independently of the library.
pub fn oracle_tokens(label: &str) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut BTreeSet<String>| {
        if word.is_empty() {
            return;
        }
        let cs: Vec<char> = word.chars().collect();
        let mut i = 0;
        while i + 3 <= cs.len() {
            out.insert(cs[i..i + 3].iter().collect());
            i += 1;
        }
        out.insert(std::mem::take(word));
    };
    for c in label.chars() {
        if c.is_alphanumeric() {
            word.extend(c.to_lowercase());
        } else {
            flush(&mut word, &mut out);
        }
    }
    flush(&mut word, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Repair oracle

/// All conflicting mapping pairs, judged by brute force over named hierarchies.
pub fn brute_force_conflicts(
    mappings: &[Mapping],
    src: &Ontology,
    tgt: &Ontology,
) -> Vec<(usize, usize)> {
    let rs = reachability(src);
    let rt = reachability(tgt);
    let sub = |r: &BTreeMap<Iri, BTreeSet<Iri>>, a: &Iri, b: &Iri| {
        r.get(a).is_some_and(|s| s.contains(b))
    };
    let disjoint = |r: &BTreeMap<Iri, BTreeSet<Iri>>, a: &Iri, b: &Iri| {
        a != b
            && !sub(r, a, b)
            && !sub(r, b, a)
            && !r.values().any(|sups| sups.contains(a) && sups.contains(b))
    };
    let mut out = Vec::new();
    for i in 0..mappings.len() {
        for j in 0..mappings.len() {
            if i >= j {
                continue;
            }
            let conflict = |x: &Mapping, y: &Mapping| {
                (sub(&rs, &x.source, &y.source) && disjoint(&rt, &x.target, &y.target))
                    || (sub(&rt, &x.target, &y.target) && disjoint(&rs, &x.source, &y.source))
            };
            if conflict(&mappings[i], &mappings[j]) || conflict(&mappings[j], &mappings[i]) {
                out.push((i, j));
            }
        }
    }
    out
}
