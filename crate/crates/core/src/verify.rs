//! The reproduction checklist: species counts, the three `ψ` theorems,
//! obstacle sets, screening statistics, explicit witnesses, the transversal
//! bound, the two-symbol diagonal theorem and the property suites.
//!
//! Each criterion is a list of named checks. `quick` mode keeps orders at
//! most 8 and sizes at most 6.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::embed::{
    count_embeddings, embed_diagonal_partition, find_embedding, transversal_bound, EmbedVerdict, EmbeddingWitness,
};
use crate::group::{
    abelian, cyclic, dihedral, direct_product, groups_of_order, isomorphic, semidirect_cyclic, Group,
};
use crate::pls::{
    canonical_form, enumerate_species, fixtures, gen_diagonal, gen_evans, gen_row_cycle, sub_species_contains,
    Parastrophe, Pls, SpeciesKey, SIXCELL_NAMES,
};
use crate::screening::{psi, psi_formula, psi_with, reductions, screen_size, PsiOptions, Variant};

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "species counts"),
    (2, "psi over all groups"),
    (3, "psi over abelian and cyclic groups"),
    (4, "obstacle sets"),
    (5, "screening counts"),
    (6, "explicit witnesses"),
    (7, "transversal bound"),
    (8, "two-symbol diagonal theorem"),
    (9, "property suites"),
];

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub quick: bool,
    pub seed: u64,
    /// Named squares; defaults to the built-in fixtures.
    pub fixtures: BTreeMap<String, Pls>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            quick: false,
            seed: DEFAULT_SEED,
            fixtures: fixtures().into_iter().map(|(k, f)| (k.to_string(), f.pls)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Wall time; left out of JSON so reports stay deterministic.
    #[serde(skip)]
    pub seconds: f64,
}

impl CriterionResult {
    /// One line: `criterion N (title): PASS|FAIL`, with failing check names.
    pub fn summary_line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {} ({}): {status}", self.id, self.title);
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        if !failed.is_empty() {
            line.push_str(&format!(" [failed: {}]", failed.join("; ")));
        }
        line
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: impl Into<String>, got: T, want: T) {
        let passed = got == want;
        let detail = if passed { format!("{got:?}") } else { format!("got {got:?}, want {want:?}") };
        self.add(name, passed, detail);
    }
}

/// Runs one criterion.
pub fn criterion(id: u8, opts: &VerifyOptions) -> CriterionResult {
    let start = Instant::now();
    let mut c = Checks(Vec::new());
    let ctx = Ctx { opts };
    match id {
        1 => ctx.species_counts(&mut c),
        2 => ctx.psi_group(&mut c),
        3 => ctx.psi_abelian_cyclic(&mut c),
        4 => ctx.obstacles(&mut c),
        5 => ctx.screening(&mut c),
        6 => ctx.witnesses(&mut c),
        7 => ctx.transversals(&mut c),
        8 => ctx.delta(&mut c),
        9 => ctx.properties(&mut c),
        _ => c.add("known criterion", false, format!("no criterion {id}")),
    }
    let title = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map_or("unknown", |(_, t)| t)
        .to_string();
    CriterionResult {
        id,
        title,
        passed: !c.0.is_empty() && c.0.iter().all(|x| x.passed),
        checks: c.0,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Runs every criterion in order.
pub fn run(opts: &VerifyOptions) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| criterion(id, opts)).collect()
}

struct Ctx<'a> {
    opts: &'a VerifyOptions,
}

fn key_set(ps: &[Pls]) -> Vec<SpeciesKey> {
    let mut v: Vec<SpeciesKey> = ps.iter().map(canonical_form).collect();
    v.sort();
    v.dedup();
    v
}

fn witness_ok(v: &EmbedVerdict, p: &Pls, g: &Group) -> bool {
    v.witness().is_some_and(|w| w.verify(p, g).is_ok())
}

/// The order-30 groups: `Z30`, `D30`, `Z5 x S3`, `Z3 x D10`.
fn groups_of_order_30() -> Vec<Group> {
    vec![
        cyclic(30).expect("valid"),
        dihedral(15).expect("valid"),
        direct_product(&cyclic(5).expect("valid"), &dihedral(3).expect("valid")).expect("valid"),
        direct_product(&cyclic(3).expect("valid"), &dihedral(5).expect("valid")).expect("valid"),
    ]
}

/// The order-18 groups: `Z18`, `Z3 x Z6`, `D18`, `Z3 x S3`, `(Z3 x Z3) x| Z2`.
pub fn groups_of_order_18() -> Vec<Group> {
    let z3z3 = abelian(&[3, 3]).expect("valid");
    let inversion: Vec<usize> = (0..9).map(|x| z3z3.inv(x)).collect();
    vec![
        cyclic(18).expect("valid"),
        abelian(&[3, 6]).expect("valid"),
        dihedral(9).expect("valid"),
        direct_product(&cyclic(3).expect("valid"), &dihedral(3).expect("valid")).expect("valid"),
        semidirect_cyclic(&z3z3, &inversion, 2, "(Z3xZ3):Z2").expect("valid"),
    ]
}

impl Ctx<'_> {
    fn fx(&self, c: &mut Checks, name: &str) -> Option<Pls> {
        let p = self.opts.fixtures.get(name).cloned();
        if p.is_none() {
            c.add(format!("fixture {name} present"), false, "missing from fixture set");
        }
        p
    }

    fn max_n(&self, full: usize) -> usize {
        if self.opts.quick {
            full.min(8)
        } else {
            full
        }
    }

    fn species_counts(&self, c: &mut Checks) {
        let max = if self.opts.quick { 6 } else { 7 };
        let want = [1, 2, 5, 18, 59, 306, 1861];
        match enumerate_species(max) {
            Ok(e) => {
                let got: Vec<usize> = e.values().map(Vec::len).collect();
                c.eq(format!("species of sizes 1..{max}"), got, want[..max].to_vec());
            }
            Err(e) => c.add("enumeration", false, e.to_string()),
        }
    }

    fn psi_group(&self, c: &mut Checks) {
        for n in 1..=self.max_n(16) {
            match psi(n, Variant::Group) {
                Ok(r) => c.eq(format!("psi({n})"), r.psi, psi_formula(n, Variant::Group)),
                Err(e) => c.add(format!("psi({n})"), false, e.to_string()),
            }
        }
    }

    fn psi_abelian_cyclic(&self, c: &mut Checks) {
        for n in 1..=self.max_n(24) {
            let a = psi(n, Variant::Abelian).map(|r| r.psi);
            let z = psi(n, Variant::Cyclic).map(|r| r.psi);
            match (a, z) {
                (Ok(a), Ok(z)) => {
                    c.eq(format!("psi+({n})"), a, psi_formula(n, Variant::Abelian));
                    c.eq(format!("psi_cyc({n}) = psi+({n})"), z, a);
                }
                (a, z) => c.add(format!("psi+/psi_cyc({n})"), false, format!("{a:?} {z:?}")),
            }
        }
    }

    fn obstacle_check(&self, c: &mut Checks, n: usize, variant: Variant, want: &[Pls]) {
        let name = format!("obstacles n={n} {variant}");
        match psi(n, variant) {
            Ok(r) => c.eq(name, r.obstacle_keys(), key_set(want)),
            Err(e) => c.add(name, false, e.to_string()),
        }
    }

    fn obstacles(&self, c: &mut Checks) {
        let (Some(interesting), Some(nonab), Some(qa), Some(qb), Some(order4)) = (
            self.fx(c, "interesting"),
            self.fx(c, "nonab"),
            self.fx(c, "quadcrit_a"),
            self.fx(c, "quadcrit_b"),
            self.fx(c, "order4"),
        ) else {
            return;
        };
        let e = |n, a| gen_evans(n, a).expect("valid parameters");
        let six_group = vec![e(6, 1), e(6, 2), e(6, 3), gen_diagonal(6).expect("t >= 1"), interesting];
        let mut six_cyclic = six_group.clone();
        six_cyclic.push(nonab.clone());
        for v in [Variant::Cyclic, Variant::Abelian] {
            self.obstacle_check(c, 6, v, &six_cyclic);
        }
        self.obstacle_check(c, 6, Variant::Group, &six_group);
        let c2 = gen_row_cycle(2).expect("l >= 2");
        let c3 = gen_row_cycle(3).expect("l >= 2");
        for n in [5, 7] {
            for v in [Variant::Group, Variant::Abelian, Variant::Cyclic] {
                self.obstacle_check(c, n, v, std::slice::from_ref(&c2));
            }
        }
        self.obstacle_check(
            c,
            4,
            Variant::Cyclic,
            &[e(4, 1), e(4, 2), e(4, 3), gen_diagonal(4).expect("t >= 1")],
        );
        self.obstacle_check(c, 8, Variant::Group, std::slice::from_ref(&c3));
        for v in [Variant::Abelian, Variant::Cyclic] {
            self.obstacle_check(c, 8, v, &[c3.clone(), nonab.clone()]);
        }
        // order4 needs an element of order 4
        c.add(
            "order4 embeds in Z4",
            witness_ok(&find_embedding(&order4, &cyclic(4).expect("n >= 1")), &order4, &cyclic(4).expect("n >= 1")),
            "",
        );
        for n in [2usize, 6, 10, 14] {
            if n > self.max_n(16) {
                continue;
            }
            let groups = groups_of_order(n).expect("catalogue order");
            let any = groups.iter().any(|g| find_embedding(&order4, g).is_embeddable());
            c.add(format!("order4 embeds in no group of order {n}"), !any, "");
        }
        if self.opts.quick {
            return;
        }
        for n in [9, 11, 13, 15] {
            for v in [Variant::Group, Variant::Abelian, Variant::Cyclic] {
                self.obstacle_check(c, n, v, std::slice::from_ref(&c2));
            }
        }
        self.obstacle_check(c, 12, Variant::Group, &[qa.clone(), qb.clone()]);
        for v in [Variant::Abelian, Variant::Cyclic] {
            self.obstacle_check(c, 12, v, std::slice::from_ref(&nonab));
        }
        for n in [10, 14, 16] {
            self.obstacle_check(c, n, Variant::Group, std::slice::from_ref(&c3));
            for v in [Variant::Abelian, Variant::Cyclic] {
                self.obstacle_check(c, n, v, &[c3.clone(), nonab.clone()]);
            }
        }
        // beyond the built-in catalogue: the four groups of order 30
        let g30 = groups_of_order_30();
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| !isomorphic(&g30[i], &g30[j])));
        c.add("order-30 groups pairwise non-isomorphic", distinct, "");
        match psi_with(30, Variant::Group, &g30, &PsiOptions::default()) {
            Ok(r) => c.eq(
                "obstacles n=30 group (supplied groups)",
                r.obstacle_keys(),
                key_set(&[qa, qb, order4]),
            ),
            Err(e) => c.add("obstacles n=30 group (supplied groups)", false, e.to_string()),
        }
    }

    fn screening(&self, c: &mut Checks) {
        let (Some(noninterc), Some(nonab), Some(qa), Some(qb), Some(overlap), Some(order4)) = (
            self.fx(c, "noninterc"),
            self.fx(c, "nonab"),
            self.fx(c, "quadcrit_a"),
            self.fx(c, "quadcrit_b"),
            self.fx(c, "overlapinterc"),
            self.fx(c, "order4"),
        ) else {
            return;
        };
        let screen = |size, n| screen_size(size, n).unwrap_or_default();
        c.eq(
            "screen_size(4, 7) = {C2, noninterc}",
            screen(4, 7),
            key_set(&[gen_row_cycle(2).expect("l >= 2"), noninterc]),
        );
        let s610 = screen(6, 10);
        c.eq("screen_size(6, 10)", s610.len(), 11);
        let s68 = screen(6, 8);
        c.add("screen_size(6, 8) reported", true, format!("{} survivors (not asserted)", s68.len()));
        if self.opts.quick {
            return;
        }
        let survivors = screen(7, 12);
        c.eq("screen_size(7, 12)", survivors.len(), 50);
        let z6 = cyclic(6).expect("n >= 1");
        let omega: Vec<Pls> = survivors
            .iter()
            .map(SpeciesKey::decode)
            .filter(|p| !find_embedding(p, &z6).is_embeddable())
            .collect();
        c.eq("survivors embedding in Z6", survivors.len() - omega.len(), 42);
        c.eq("|Omega|", omega.len(), 8);
        let with_nonab: Vec<&Pls> = omega.iter().filter(|p| sub_species_contains(p, &nonab)).collect();
        c.eq("Omega members containing nonab", with_nonab.len(), 6);
        let quad_keys = key_set(&[qa, qb]);
        let quads_inside = with_nonab.iter().filter(|p| quad_keys.contains(&canonical_form(p))).count();
        c.eq("quadcrit pair among them", quads_inside, 2);
        let d6 = dihedral(3).expect("k >= 2");
        let others_in_d6 = with_nonab
            .iter()
            .filter(|p| !quad_keys.contains(&canonical_form(p)))
            .filter(|p| find_embedding(p, &d6).is_embeddable())
            .count();
        c.eq("other four embed in D6", others_in_d6, 4);
        let rest: Vec<SpeciesKey> = key_set(
            &omega
                .iter()
                .filter(|p| !sub_species_contains(p, &nonab))
                .cloned()
                .collect::<Vec<_>>(),
        );
        c.eq("remaining two are overlapinterc and order4", rest, key_set(&[overlap, order4]));
    }

    fn witnesses(&self, c: &mut Checks) {
        if let Some(nonab) = self.fx(c, "nonab") {
            let d6 = dihedral(3).expect("k >= 2");
            c.add("nonab in D6", witness_ok(&find_embedding(&nonab, &d6), &nonab, &d6), "");
            // rows e, r, r^2 s and columns e, rs, s, with r^i s^j at index i + 3j
            let shape_ok = nonab.counts() == [3, 3, 4];
            let rows = vec![0, 1, 5];
            let cols = vec![0, 4, 3];
            let mut syms = vec![0; nonab.n_syms()];
            for t in nonab.triples().iter().filter(|_| shape_ok) {
                syms[t.sym as usize] = d6.mul(rows[t.row as usize], cols[t.col as usize]);
            }
            let table = EmbeddingWitness { rows, cols, syms };
            c.add("nonab reference table in D6", shape_ok && table.verify(&nonab, &d6).is_ok(), "");
        }
        for name in SIXCELL_NAMES {
            let Some(p) = self.fx(c, name) else { continue };
            let mut failed = Vec::new();
            for n in 6..=self.max_n(16) {
                let z = cyclic(n).expect("n >= 1");
                if !witness_ok(&find_embedding(&p, &z), &p, &z) {
                    failed.push(n);
                }
            }
            let detail = if failed.is_empty() {
                String::new()
            } else {
                format!("no embedding in Z_n for n = {failed:?}")
            };
            c.add(format!("{name} in Z_n for every n in 6..={}", self.max_n(16)), failed.is_empty(), detail);
        }
        if let Some(p) = self.fx(c, "overlapinterc") {
            let v4 = abelian(&[2, 2]).expect("valid");
            c.add("overlapinterc in Z2xZ2", witness_ok(&find_embedding(&p, &v4), &p, &v4), "");
            let hits: Vec<usize> = (1..=30)
                .filter(|&n| find_embedding(&p, &cyclic(n).expect("n >= 1")).is_embeddable())
                .collect();
            c.add("overlapinterc in no Z_n, n <= 30", hits.is_empty(), format!("embeds for n = {hits:?}"));
        }
    }

    fn transversals(&self, c: &mut Checks) {
        for n in 1..=self.max_n(12) {
            for g in groups_of_order(n).expect("catalogue order") {
                let bad: Vec<usize> = (1..=transversal_bound(n))
                    .filter(|&t| {
                        let p = gen_diagonal(t).expect("t >= 1");
                        !witness_ok(&find_embedding(&p, &g), &p, &g)
                    })
                    .collect();
                c.add(
                    format!("T_t in {} for t <= {}", g.name(), transversal_bound(n)),
                    bad.is_empty(),
                    format!("failed for t = {bad:?}"),
                );
            }
        }
        for n in [2, 6, 10] {
            if n > self.max_n(12) {
                continue;
            }
            let t = gen_diagonal(n).expect("t >= 1");
            for g in groups_of_order(n).expect("catalogue order") {
                c.add(format!("T_{n} not in {}", g.name()), !find_embedding(&t, &g).is_embeddable(), "");
            }
        }
    }

    fn delta(&self, c: &mut Checks) {
        for n in 4..=self.max_n(16) {
            for g in groups_of_order(n).expect("catalogue order") {
                match embed_diagonal_partition(&g, &[3, n - 3]) {
                    Ok(found) => {
                        let valid = found.as_ref().map_or(true, |pi| realizes(&g, pi, &[3, n - 3]));
                        c.add(
                            format!("delta({n}) in {}", g.name()),
                            valid && found.is_some() == (n % 3 == 0),
                            format!("found = {}", found.is_some()),
                        );
                    }
                    Err(e) => c.add(format!("delta({n}) in {}", g.name()), false, e.to_string()),
                }
            }
        }
    }

    fn properties(&self, c: &mut Checks) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.opts.seed);
        let max_size = if self.opts.quick { 6 } else { 7 };
        let species = match enumerate_species(max_size) {
            Ok(s) => s,
            Err(e) => return c.add("enumeration", false, e.to_string()),
        };

        // lemma soundness, every rule application
        let mut applications = 0;
        let mut counterexamples = Vec::new();
        for n in 1..=self.max_n(10) {
            let groups = groups_of_order(n).expect("catalogue order");
            for size in 1..=5 {
                for p in &species[&size] {
                    for cert in reductions(p, n) {
                        let q = cert.reduced_pls();
                        for g in &groups {
                            let inherits = q.as_ref().map_or(true, |q| find_embedding(q, g).is_embeddable());
                            if inherits {
                                applications += 1;
                                if !find_embedding(p, g).is_embeddable() {
                                    counterexamples.push(format!("{} in {} via {:?}", canonical_form(p), g.name(), cert.rule));
                                }
                            }
                        }
                    }
                }
            }
        }
        c.add(
            "lemma soundness (size <= 5)",
            counterexamples.is_empty(),
            format!("{applications} applications, counterexamples: {counterexamples:?}"),
        );

        // canonical form invariance
        let mut mismatches = 0;
        for _ in 0..1000 {
            let size = rng.gen_range(1..=max_size);
            let p = species[&size].choose(&mut rng).expect("nonempty level");
            let q = random_image(p, &mut rng);
            if canonical_form(&q) != canonical_form(p) {
                mismatches += 1;
            }
        }
        c.eq("canonical form invariance (1000 samples)", mismatches, 0);

        // witness verification across a sweep
        let mut witnesses = 0;
        let mut invalid = 0;
        for n in 1..=6 {
            for g in groups_of_order(n).expect("catalogue order") {
                for size in 1..=5 {
                    for p in &species[&size] {
                        if let Some(w) = find_embedding(p, &g).witness() {
                            witnesses += 1;
                            if w.verify(p, &g).is_err() {
                                invalid += 1;
                            }
                        }
                    }
                }
            }
        }
        c.add("witness re-verification", invalid == 0, format!("{witnesses} witnesses, {invalid} invalid"));

        // species invariance spot checks
        let groups: Vec<Group> = (1..=8).flat_map(|n| groups_of_order(n).expect("catalogue order")).collect();
        let mut disagreements = 0;
        for _ in 0..200 {
            let size = rng.gen_range(1..=6);
            let p = species[&size].choose(&mut rng).expect("nonempty level");
            let q = random_image(p, &mut rng);
            let g = groups.choose(&mut rng).expect("nonempty");
            if find_embedding(p, g).is_embeddable() != find_embedding(&q, g).is_embeddable() {
                disagreements += 1;
            }
        }
        c.eq("species invariance (200 samples)", disagreements, 0);

        // row cycles and element orders
        let mut law_failures = Vec::new();
        for n in 1..=self.max_n(16) {
            for g in groups_of_order(n).expect("catalogue order") {
                for l in 2..=6 {
                    let p = gen_row_cycle(l).expect("l >= 2");
                    if find_embedding(&p, &g).is_embeddable() != g.has_element_of_order(l) {
                        law_failures.push(format!("C{l} in {}", g.name()));
                    }
                }
            }
        }
        c.add("row-cycle element-order law", law_failures.is_empty(), format!("{law_failures:?}"));

        // counting sanity: single cell in Z5
        let single = Pls::from_raw(&[(1, 1, 1)]).expect("valid");
        c.eq("single cell count in Z5", count_embeddings(&single, &cyclic(5).expect("n >= 1"), None), 25);
    }
}

fn realizes(g: &Group, pi: &[usize], parts: &[usize]) -> bool {
    let mut seen = vec![false; g.order()];
    let mut mult = vec![0; g.order()];
    for (x, &y) in pi.iter().enumerate() {
        if y >= g.order() || std::mem::replace(&mut seen[y], true) {
            return false;
        }
        mult[g.mul(x, y)] += 1;
    }
    let mut got: Vec<usize> = mult.into_iter().filter(|&m| m > 0).collect();
    let mut want = parts.to_vec();
    got.sort_unstable();
    want.sort_unstable();
    got == want
}

/// A random relabelling of a random parastrophe of `p`.
pub fn random_image(p: &Pls, rng: &mut impl Rng) -> Pls {
    let sigma = *Parastrophe::ALL.choose(rng).expect("six parastrophes");
    let q = p.parastrophe(sigma);
    let perm = |k: usize, rng: &mut dyn rand::RngCore| {
        let mut v: Vec<u8> = (0..k as u8).collect();
        v.shuffle(rng);
        v
    };
    let [nr, nc, ns] = q.counts();
    let (r, cl, s) = (perm(nr, rng), perm(nc, rng), perm(ns, rng));
    q.relabel(&r, &cl, &s)
}
