//! Verification suites: each enumerates a family of instances (exhaustively
//! or from a seed), decides every instance by brute force and compares with
//! an oracle.

use std::fmt;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    build_2partite_instance, build_gw_antenna_instance, reduce_taut_to_1king_gw, reduce_to_kings, reduce_to_kkings,
    Attachment, InstanceNode, ReductionInstance,
};
use crate::bits::BitString;
use crate::circuit::{
    gw_check_tournament, jt_edge, jt_materialize, lift_j, lift_k, mpt_has_1king_fast, random_circuit,
    JTournamentCircuit, JtNode,
};
use crate::digraph::{
    all_k_kings, enumerate_tournaments, find_king_landau, is_k_king, random_digraph, random_multipartite,
    recognize_jpartite_direct, recognize_jpartite_patterns, Digraph,
};
use crate::error::{Error, Result};
use crate::formula::{decode_table, eval_forall_exists, is_satisfiable, is_tautology, Codec, DecodedFormula, Formula};
use crate::specifier::{
    build_subtournament_decoded, check_associativity, check_no_bridge, check_subtournament_embedding, induced_graph,
    make_builtin_specifier, specifier_k_king, validate_specifier, BuiltinKind, CheckMode, NodeClass, TournamentFamily,
};
use crate::Limits;

const MAX_WITNESSES: usize = 10;

const SUITES: &[&str] = &[
    "claim2.2:n=1",
    "claim2.2:n=2",
    "claim2.2:n=3s",
    "claim2.8",
    "claim2.11",
    "weave-pi2:m=12",
    "weave-conp:m=8",
    "weave-conp:m=13",
    "weave-np:m=9",
    "weave-kkings:k=3:m=13",
    "antenna:k=2",
    "antenna:k=3",
    "antenna:k=4",
    "antenna:k=5",
    "onekings-gw",
    "lemma4.2",
    "lemma4.3:n=1",
    "lemma4.3:n=2",
    "lemma4.4",
    "lemma4.5",
    "landau:n<=5",
    "patterns-eq",
    "fourking-mpt",
    "assoc-max",
];

/// Every suite identifier `verify_suite` accepts.
pub fn suite_ids() -> &'static [&'static str] {
    SUITES
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: String,
    pub instances: u64,
    pub agreements: u64,
    pub disagreements: u64,
    /// Descriptions of the first few disagreeing instances.
    pub witnesses: Vec<String>,
    /// Extra facts about the run (sizes, counts).
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.instances > 0 && self.disagreements == 0
    }

    /// One `key=value` record.
    pub fn record(&self) -> String {
        format!(
            "suite={} instances={} agree={} disagree={} millis={}",
            self.suite,
            self.instances,
            self.agreements,
            self.disagreements,
            self.elapsed.as_millis()
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}/{} agree", self.suite, self.agreements, self.instances)?;
        for n in &self.notes {
            write!(f, "\n  {n}")?;
        }
        for w in &self.witnesses {
            write!(f, "\n  disagreement: {w}")?;
        }
        write!(f, "\n  time: {:.2}s", self.elapsed.as_secs_f64())
    }
}

#[derive(Default)]
struct Acc {
    instances: u64,
    agreements: u64,
    witnesses: Vec<String>,
    notes: Vec<String>,
}

impl Acc {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if ok {
            self.agreements += 1;
        } else if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(what());
        }
    }

    fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }
}

/// Runs the suite `id`. `seed` drives the sampled suites (default 0).
pub fn verify_suite(id: &str, seed: Option<u64>, limits: &Limits) -> Result<VerificationReport> {
    let seed = seed.unwrap_or(0);
    let start = Instant::now();
    let mut acc = Acc::default();
    match id {
        "claim2.2:n=1" => claim_pi2(&mut acc, all_tables(4), 1, limits)?,
        "claim2.2:n=2" => claim_pi2(&mut acc, all_tables(16), 2, limits)?,
        "claim2.2:n=3s" => claim_pi2(&mut acc, random_tables(64, 1000, seed), 3, limits)?,
        "claim2.8" => claim_conp(&mut acc, limits)?,
        "claim2.11" => claim_np(&mut acc, limits)?,
        "weave-pi2:m=12" => weave(&mut acc, BuiltinKind::Pi2(Codec::TtFe), 12, limits)?,
        "weave-conp:m=8" => weave(&mut acc, BuiltinKind::Conp(Codec::TtPlain), 8, limits)?,
        "weave-conp:m=13" => weave(&mut acc, BuiltinKind::Conp(Codec::TtPlain), 13, limits)?,
        "weave-np:m=9" => weave(&mut acc, BuiltinKind::Np(Codec::TtPlain), 9, limits)?,
        "weave-kkings:k=3:m=13" => weave_kkings(&mut acc, 3, 13, limits)?,
        "onekings-gw" => one_kings(&mut acc, limits)?,
        "lemma4.2" => fast_one_kings(&mut acc, seed, limits)?,
        "lemma4.3:n=1" => two_partite_suite(&mut acc, &two_partite_tables(1, seed), limits)?,
        "lemma4.3:n=2" => two_partite_suite(&mut acc, &two_partite_tables(2, seed), limits)?,
        "lemma4.4" => lift_j_suite(&mut acc, seed, limits)?,
        "lemma4.5" => lift_k_suite(&mut acc, seed, limits)?,
        "landau:n<=5" => landau(&mut acc)?,
        "patterns-eq" => patterns_eq(&mut acc, seed)?,
        "fourking-mpt" => four_king_mpt(&mut acc, seed)?,
        "assoc-max" => assoc_max(&mut acc, limits)?,
        _ => match id.strip_prefix("antenna:k=").and_then(|k| k.parse::<usize>().ok()) {
            Some(k) if (2..=5).contains(&k) => antenna(&mut acc, k, limits)?,
            _ => return Err(Error::UnknownSuite(id.to_string())),
        },
    }
    Ok(VerificationReport {
        suite: id.to_string(),
        instances: acc.instances,
        agreements: acc.agreements,
        disagreements: acc.instances - acc.agreements,
        witnesses: acc.witnesses,
        notes: acc.notes,
        elapsed: start.elapsed(),
    })
}

fn all_tables(len: usize) -> Vec<BitString> {
    BitString::all_of_length(len).collect()
}

fn random_tables(len: usize, count: usize, seed: u64) -> Vec<BitString> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| BitString::from_bits((0..len).map(|_| rng.random()).collect()))
        .collect()
}

fn decode(bits: &BitString, codec: Codec) -> DecodedFormula {
    decode_table(bits, codec).expect("table lengths are chosen to decode")
}

/// ∀∃-truth through the formula evaluator, independent of `T_φ`.
fn fe_oracle(phi: &DecodedFormula, limits: &Limits) -> Result<bool> {
    match phi.to_formula(Codec::TtFe) {
        Formula::ForallExists(f) => eval_forall_exists(&f, limits),
        Formula::Plain(_) => unreachable!("∀∃ codec"),
    }
}

fn plain_formula(phi: &DecodedFormula) -> crate::formula::PropFormula {
    match phi.to_formula(Codec::TtPlain) {
        Formula::Plain(f) => f,
        Formula::ForallExists(_) => unreachable!("plain codec"),
    }
}

fn claim_pi2(acc: &mut Acc, tables: Vec<BitString>, n: usize, limits: &Limits) -> Result<()> {
    let kind = BuiltinKind::Pi2(Codec::TtFe);
    let mut trues = 0;
    for bits in &tables {
        let phi = decode(bits, Codec::TtFe);
        let t = build_subtournament_decoded(kind, &phi, limits)?;
        let king = is_k_king(t.tournament().graph(), t.potential_king(), 2)?;
        let truth = fe_oracle(&phi, limits)?;
        trues += truth as usize;
        acc.check(king == truth, || format!("table {bits}: king={king} true={truth}"));
    }
    acc.note(format!("n={n}: {} formulas, {trues} true", tables.len()));
    Ok(())
}

fn claim_conp(acc: &mut Acc, limits: &Limits) -> Result<()> {
    let kind = BuiltinKind::Conp(Codec::TtPlain);
    let mut exact_mismatches = 0;
    for n in 1..=3 {
        for bits in all_tables(1 << n) {
            let phi = decode(&bits, Codec::TtPlain);
            let t = build_subtournament_decoded(kind, &phi, limits)?;
            let g = t.tournament().graph();
            let king = |suffix: &BitString| -> Result<bool> {
                is_k_king(g, t.node_of_suffix(suffix).expect("member suffix"), 2)
            };
            let f = plain_formula(&phi);
            let taut = is_tautology(&f, limits)?;
            let pk = king(&BitString::zeros(n + 2))?;
            acc.check(pk == taut, || format!("{bits}: potential king {pk}, tautology {taut}"));

            let mut hundred = BitString::from_bits(vec![true]);
            hundred.extend_from(&BitString::zeros(n + 1));
            let h = king(&hundred)?;
            let at_zero = f.eval(&BitString::zeros(n))?;
            acc.check(h == at_zero, || format!("{bits}: 100^n king {h}, φ(0^n) {at_zero}"));

            let mut all_before = true;
            for x in BitString::all_of_length(n) {
                let value = f.eval(&x)?;
                let mut suffix = BitString::ones(2);
                suffix.extend_from(&x);
                let k = king(&suffix)?;
                let want = !value && all_before;
                acc.check(k == want, || format!("{bits}: 11{x} king {k}, expected {want}"));
                // 11·0^n reaches 100^n through 0^{n+2}, so it is a king
                // whatever φ(0^n) is.
                let exact = want || x.is_all_zeros();
                exact_mismatches += (k != exact) as usize;
                all_before &= value;
            }
        }
    }
    acc.note("tables n=1..3, exhaustive");
    acc.note(format!(
        "rule \"11x king iff x is the first falsifying assignment, or x = 0^n\": {exact_mismatches} mismatches"
    ));
    Ok(())
}

fn claim_np(acc: &mut Acc, limits: &Limits) -> Result<()> {
    let kind = BuiltinKind::Np(Codec::TtPlain);
    for n in 1..=3 {
        for bits in all_tables(1 << n) {
            let phi = decode(&bits, Codec::TtPlain);
            let t = build_subtournament_decoded(kind, &phi, limits)?;
            let g = t.tournament().graph();
            let sat = is_satisfiable(&plain_formula(&phi), limits)?;
            for v in 0..t.num_nodes() {
                let s = t.suffix(v);
                let k = is_k_king(g, v, 2)?;
                let want = if s.is_all_zeros() {
                    sat
                } else {
                    // 10x never; 001^n, 110^n and 1^{n+2} always.
                    !(s.get(0) == Some(true) && s.get(1) == Some(false))
                };
                acc.check(k == want, || format!("{bits}: suffix {s} king {k}, expected {want}"));
            }
        }
    }
    acc.note("tables n=1..3, exhaustive");
    Ok(())
}

fn kings_set(g: &Digraph) -> Result<FixedBitSet> {
    let mut set = FixedBitSet::with_capacity(g.num_nodes());
    all_k_kings(g, 2)?.into_iter().for_each(|v| set.insert(v));
    Ok(set)
}

fn weave(acc: &mut Acc, kind: BuiltinKind, m: usize, limits: &Limits) -> Result<()> {
    let spec = make_builtin_specifier(kind)?;
    let codec = kind.codec().expect("woven kind");
    let report = validate_specifier(&spec, m, CheckMode::Exhaustive, limits)?;
    acc.check(report.passed(), || report.to_string());
    acc.note(format!("validated {} pairs", report.pairs_checked));

    let ctx = spec.length_context(m, limits)?;
    let t = induced_graph(&spec, m, limits)?;
    let g = t.graph();
    let kings = kings_set(g)?;
    let string = |v: usize| BitString::from_index(v as u64, m);
    let np = matches!(kind, BuiltinKind::Np(_));

    for (p, phi) in ctx.formulas().iter().enumerate() {
        let text = phi.to_formula(codec).to_string();
        let r = reduce_to_kings(kind, &text, limits)?;
        let pk = ctx.potential_king_of(p).expect("every formula has a potential king");
        let oracle = match kind {
            BuiltinKind::Pi2(_) => fe_oracle(phi, limits)?,
            BuiltinKind::Conp(_) => is_tautology(&plain_formula(phi), limits)?,
            _ => is_satisfiable(&plain_formula(phi), limits)?,
        };
        let fast = specifier_k_king(&spec, &string(pk), 2, limits)?;
        acc.check(
            r.node == InstanceNode::Bits(string(pk)) && kings.contains(pk) == oracle && fast == oracle,
            || {
                format!(
                    "formula {}: reduced to {}, king {}, oracle {oracle}",
                    phi.code,
                    r.node,
                    kings.contains(pk)
                )
            },
        );

        // Members are kings of the weave exactly when they are kings of T_φ.
        let sub = build_subtournament_decoded(kind, phi, limits)?;
        for v in ctx.members_of(p) {
            let label = string(v);
            let local = sub
                .tournament()
                .graph()
                .find_label(&label.to_string())
                .expect("member label");
            let inner = is_k_king(sub.tournament().graph(), local, 2)?;
            acc.check(kings.contains(v) == inner, || {
                format!("member {label}: weave {} T_φ {inner}", kings.contains(v))
            });
        }
    }

    acc.check(kings.contains(0), || "0^m is not a king".into());
    let mut others = 0;
    for v in 0..ctx.num_nodes() {
        match ctx.class_of(v) {
            NodeClass::Other => {
                others += 1;
                acc.check(!kings.contains(v), || format!("Other node {} is a king", string(v)));
            }
            NodeClass::Marker { phi } => {
                let smallest = ctx.formulas().first() == Some(&phi);
                let want = !np && smallest;
                acc.check(kings.contains(v) == want, || {
                    format!("marker {} king {}", string(v), kings.contains(v))
                });
            }
            NodeClass::SpecialA | NodeClass::SpecialB => {
                acc.check(kings.contains(v), || {
                    format!("special node {} is not a king", string(v))
                });
            }
            _ => {}
        }
    }
    let bridges = check_no_bridge(&spec, m, limits)?;
    acc.check(bridges.is_empty(), || format!("bridge {:?}", bridges[0]));
    let embedding = check_subtournament_embedding(&spec, m, limits)?;
    acc.check(embedding.is_empty(), || format!("T_φ differs for {:?}", embedding));
    acc.note(format!(
        "m={m}: {} formulas, {} kings among {} nodes, {others} Other nodes checked",
        ctx.formulas().len(),
        kings.count_ones(..),
        ctx.num_nodes()
    ));
    Ok(())
}

fn weave_kkings(acc: &mut Acc, k: usize, m: usize, limits: &Limits) -> Result<()> {
    let kind = BuiltinKind::KKings {
        k,
        codec: Codec::Catalog,
    };
    let spec = make_builtin_specifier(kind)?;
    let report = validate_specifier(&spec, m, CheckMode::Exhaustive, limits)?;
    acc.check(report.passed(), || report.to_string());

    let ctx = spec.length_context(m, limits)?;
    let t = induced_graph(&spec, m, limits)?;
    let g = t.graph();
    let string = |v: usize| BitString::from_index(v as u64, m);
    let mut trues = 0;
    for phi in ctx.formulas() {
        let text = phi.to_formula(Codec::Catalog).to_string();
        let r = reduce_to_kkings(&text, k, Codec::Catalog, limits)?;
        let InstanceNode::Bits(tip) = &r.node else {
            unreachable!("family target")
        };
        let v = tip.to_index() as usize;
        let oracle = fe_oracle(phi, limits)?;
        trues += oracle as usize;
        let king = is_k_king(g, v, k)?;
        let lazy = specifier_k_king(&spec, tip, k, limits)?;
        acc.check(king == oracle && lazy == oracle && tip.len() == m, || {
            format!(
                "catalog formula {}: tip {tip} king {king} (lazy {lazy}), oracle {oracle}",
                phi.code
            )
        });

        // Converse audit: everything within k − 2 steps of the tip is Other,
        // on φ's own antenna (potential king included), or an antenna node of
        // ψ > φ, or of ψ < φ at level ≥ 2.
        let mut reach = FixedBitSet::with_capacity(g.num_nodes());
        reach.insert(v);
        let mut frontier = reach.clone();
        for _ in 0..k - 2 {
            let mut next = FixedBitSet::with_capacity(g.num_nodes());
            frontier.ones().for_each(|u| next.union_with(g.out_row(u)));
            next.difference_with(&reach);
            reach.union_with(&next);
            frontier = next;
        }
        let mut bad = None;
        for u in reach.ones() {
            let ok = match ctx.class_of(u) {
                NodeClass::Other => true,
                NodeClass::Member { phi: psi, suffix } => psi == *phi && suffix.is_all_zeros(),
                NodeClass::Antenna { phi: psi, level } => psi >= *phi || level >= 2,
                _ => false,
            };
            if !ok {
                bad = Some(u);
                break;
            }
        }
        acc.check(bad.is_none(), || {
            format!("tip {tip} reaches {} within {} steps", string(bad.unwrap()), k - 2)
        });
    }

    let out = spec.canonical_out();
    acc.check(out.len() == m && !is_k_king(g, out.to_index() as usize, k)?, || {
        format!("out {out} is a {k}-king")
    });

    let bridges = check_no_bridge(&spec, m, limits)?;
    acc.check(bridges.is_empty(), || {
        format!("bridge from a potential king {:?}", bridges[0])
    });
    let embedding = check_subtournament_embedding(&spec, m, limits)?;
    acc.check(embedding.is_empty(), || format!("T_φ differs for {:?}", embedding));

    // k = 2 is the ∀∃ weave itself.
    let pi2 = make_builtin_specifier(BuiltinKind::Pi2(Codec::TtFe))?;
    let k2 = make_builtin_specifier(BuiltinKind::KKings {
        k: 2,
        codec: Codec::TtFe,
    })?;
    let (a, b) = (pi2.length_view(12, limits)?, k2.length_view(12, limits)?);
    let n = 1usize << 12;
    let diff = (0..n).find_map(|x| {
        (0..n)
            .find(|&y| a.select_idx(x, y) != b.select_idx(x, y))
            .map(|y| (x, y))
    });
    acc.check(diff.is_none(), || format!("kkings:2 and pi2 differ on {diff:?}"));

    acc.note(format!(
        "m={m}: {} catalog formulas, {trues} true, {}-kings checked on materialized and lazy paths",
        ctx.formulas().len(),
        k
    ));
    acc.note(format!(
        "k=2 degeneration compared on {} ordered pairs at length 12",
        n * n
    ));
    Ok(())
}

fn antenna(acc: &mut Acc, k: usize, limits: &Limits) -> Result<()> {
    for bits in all_tables(4) {
        let phi = match decode(&bits, Codec::TtFe).to_formula(Codec::TtFe) {
            Formula::ForallExists(f) => f,
            Formula::Plain(_) => unreachable!(),
        };
        let r = build_gw_antenna_instance(&phi, k, limits)?;
        let oracle = eval_forall_exists(&phi, limits)?;
        let Some(Attachment::Gw(sg)) = &r.attachment else {
            unreachable!("GW target")
        };
        let tournament = gw_check_tournament(sg, limits)?;
        let king = r.decide(limits)?;
        acc.check(king == oracle && tournament, || {
            format!("table {bits}: {k}-king {king}, oracle {oracle}, tournament {tournament}")
        });
    }
    acc.note(format!("k={k}: 16 n=1 matrices"));
    Ok(())
}

fn one_kings(acc: &mut Acc, limits: &Limits) -> Result<()> {
    for n in 1..=3 {
        for bits in all_tables(1 << n) {
            let f = plain_formula(&decode(&bits, Codec::TtPlain));
            let r = reduce_taut_to_1king_gw(&f, limits)?;
            let Some(Attachment::Gw(sg)) = &r.attachment else {
                unreachable!("GW target")
            };
            let tournament = gw_check_tournament(sg, limits)?;
            let king = r.decide(limits)?;
            let taut = is_tautology(&f, limits)?;
            acc.check(king == taut && tournament, || {
                format!("{bits}: header 1-king {king}, tautology {taut}")
            });
        }
    }
    acc.note("tables n=1..3, exhaustive");
    Ok(())
}

fn fast_one_kings(acc: &mut Acc, seed: u64, limits: &Limits) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let j = rng.random_range(2..=4);
        let n = rng.random_range(0..=1);
        let c = random_circuit(j * (n + 1), rng.random_range(1..=12), &mut rng);
        let jc = JTournamentCircuit::new(j, n, c)?;
        let brute = all_k_kings(jt_materialize(&jc, limits)?.graph(), 1)?;
        let fast = mpt_has_1king_fast(&jc);
        let ok = match &fast {
            None => brute.is_empty(),
            Some(v) => brute.contains(&jc.node_id(v)?),
        } && (n == 0 || brute.is_empty());
        acc.check(ok, || format!("j={j} n={n}: fast {fast:?}, brute {brute:?}"));
    }
    acc.note("1000 random circuits, j ≤ 4, n ≤ 1");
    Ok(())
}

/// The ∀∃ matrices the 2-partite suites cover: all at `n = 1`, 1000 seeded
/// samples at `n = 2`.
fn two_partite_tables(n: usize, seed: u64) -> Vec<BitString> {
    if n == 1 {
        all_tables(4)
    } else {
        random_tables(16, 1000, seed)
    }
}

fn two_partite(bits: &BitString, limits: &Limits) -> Result<(ReductionInstance, JTournamentCircuit, JtNode)> {
    let phi = match decode(bits, Codec::TtFe).to_formula(Codec::TtFe) {
        Formula::ForallExists(f) => f,
        Formula::Plain(_) => unreachable!(),
    };
    let r = build_2partite_instance(&phi, limits)?;
    let (Some(Attachment::Jt(jc)), InstanceNode::Jt(a)) = (&r.attachment, &r.node) else {
        unreachable!("JT target")
    };
    let (jc, a) = (jc.clone(), a.clone());
    Ok((r, jc, a))
}

fn two_partite_suite(acc: &mut Acc, tables: &[BitString], limits: &Limits) -> Result<()> {
    for bits in tables {
        let (r, jc, _) = two_partite(bits, limits)?;
        let oracle = fe_oracle(&decode(bits, Codec::TtFe), limits)?;
        let king = r.decide(limits)?;
        let n = bits.len().trailing_zeros() as usize / 2;
        acc.check(king == oracle && jc.part_size() == 1 << (n + 1), || {
            format!("table {bits}: a 2-king {king}, oracle {oracle}")
        });
    }
    acc.note(format!("{} matrices", tables.len()));
    Ok(())
}

fn lift_j_suite(acc: &mut Acc, seed: u64, limits: &Limits) -> Result<()> {
    let tables: Vec<BitString> = two_partite_tables(1, seed)
        .into_iter()
        .chain(two_partite_tables(2, seed))
        .collect();
    for bits in &tables {
        let (_, jc, a) = two_partite(bits, limits)?;
        let base = jt_materialize(&jc, limits)?;
        let mut lifted = jc.clone();
        for _ in 0..2 {
            lifted = lift_j(&lifted);
            let mpt = jt_materialize(&lifted, limits)?;
            let g = mpt.graph();
            let mut ok = true;
            for k in 1..=3 {
                ok &= is_k_king(g, lifted.node_id(&a)?, k)? == is_k_king(base.graph(), jc.node_id(&a)?, k)?;
            }
            // Old arcs are untouched and the new part consists of sinks.
            let old = jc.num_nodes();
            ok &= (0..old).all(|u| (0..old).all(|v| u == v || g.has_edge(u, v) == base.graph().has_edge(u, v)));
            let new_part = lifted.j();
            ok &= (0..lifted.num_nodes())
                .filter(|&v| lifted.node_at(v).part == new_part)
                .all(|v| g.out_degree(v) == 0);
            acc.check(ok, || {
                format!("table {bits}: lift to j={} changed kingship", lifted.j())
            });
        }
    }
    acc.note(format!("{} instances lifted to j=3 and j=4, k=1..3", tables.len()));
    Ok(())
}

fn lift_k_suite(acc: &mut Acc, seed: u64, limits: &Limits) -> Result<()> {
    let tables: Vec<BitString> = two_partite_tables(1, seed)
        .into_iter()
        .chain(two_partite_tables(2, seed))
        .collect();
    for bits in &tables {
        let (_, jc, a) = two_partite(bits, limits)?;
        let base = jt_materialize(&jc, limits)?;
        let lifted = lift_k(&jc, &a, limits)?;
        let mpt = jt_materialize(&lifted.circuit, limits)?;
        let z = lifted.circuit.node_id(&lifted.z)?;
        let mut ok = jt_edge(&lifted.circuit, &lifted.z, &lifted.w)?;
        for k in 1..=3 {
            ok &= is_k_king(mpt.graph(), z, k + 1)? == is_k_king(base.graph(), jc.node_id(&a)?, k)?;
        }
        acc.check(ok, || format!("table {bits}: lift_k does not shift kingship"));
    }
    acc.note(format!("{} instances, k=1..3", tables.len()));
    Ok(())
}

fn landau(acc: &mut Acc) -> Result<()> {
    let mut total = 0;
    for n in 1..=5 {
        for t in enumerate_tournaments(n)? {
            total += 1;
            let kings = all_k_kings(t.graph(), 2)?;
            let found = find_king_landau(&t);
            acc.check(!kings.is_empty() && kings.contains(&found), || {
                format!("n={n}: {}", crate::digraph::write_graph(t.graph()))
            });
        }
    }
    acc.note(format!("{total} labeled tournaments on 1..5 nodes"));
    Ok(())
}

fn patterns_eq(acc: &mut Acc, seed: u64) -> Result<()> {
    let compare = |acc: &mut Acc, g: &Digraph| -> Result<()> {
        for j in 2..=4 {
            let a = recognize_jpartite_patterns(g, j)?;
            let b = recognize_jpartite_direct(g, j)?;
            acc.check(a == b, || {
                format!("j={j}: patterns {a}, direct {b}: {}", crate::digraph::write_graph(g))
            });
        }
        Ok(())
    };
    let mut exhaustive = 0;
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        for mask in 0..1u64 << pairs.len() {
            let mut g = Digraph::new(n)?;
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.add_edge(a, b)?;
                }
            }
            compare(acc, &g)?;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let n = rng.random_range(1..=7);
        // Half the samples are random multipartite orientations, which the
        // recognizers should accept for some j.
        let g = if rng.random() {
            let parts = rng.random_range(2..=4);
            let mut sizes: Vec<usize> = (0..parts).map(|_| rng.random_range(1..=2)).collect();
            if sizes.iter().sum::<usize>() > 7 {
                sizes[0] = 1;
            }
            random_multipartite(&sizes, &mut rng)?.graph().clone()
        } else {
            random_digraph(n, rng.random_range(0.1..0.9), &mut rng)?
        };
        compare(acc, &g)?;
    }
    acc.note(format!(
        "{exhaustive} digraphs on ≤ 4 nodes and 10000 random digraphs on ≤ 7 nodes, j = 2..4"
    ));
    Ok(())
}

fn four_king_mpt(acc: &mut Acc, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut with_sources, mut without) = (0, 0);
    for _ in 0..1000 {
        let parts = rng.random_range(2..=4);
        let sizes: Vec<usize> = (0..parts).map(|_| rng.random_range(1..=4)).collect();
        let mpt = random_multipartite(&sizes, &mut rng)?;
        let sources = mpt.sources().len();
        let ok = if sources >= 2 {
            with_sources += 1;
            all_k_kings(mpt.graph(), 10)?.is_empty()
        } else {
            without += 1;
            !all_k_kings(mpt.graph(), 4)?.is_empty()
        };
        acc.check(ok, || format!("parts {sizes:?}, {sources} sources"));
    }
    acc.note(format!(
        "{without} with ≤ 1 source (4-king found), {with_sources} with ≥ 2 (no 10-king)"
    ));
    Ok(())
}

fn assoc_max(acc: &mut Acc, limits: &Limits) -> Result<()> {
    let spec = make_builtin_specifier(BuiltinKind::Max)?;
    for m in 1..=6 {
        let r = check_associativity(&spec, m, CheckMode::Exhaustive, limits)?;
        let top = BitString::ones(m);
        acc.check(
            r.passed() && r.kings.as_deref() == Some(std::slice::from_ref(&top)),
            || r.to_string(),
        );
    }
    acc.note("m=1..6: associative, one 2-king per length, selected against every string");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let l = Limits::default();
        for id in [
            "claim2.2:n=1",
            "claim2.11",
            "antenna:k=3",
            "onekings-gw",
            "landau:n<=5",
            "assoc-max",
        ] {
            let r = verify_suite(id, None, &l).unwrap();
            assert!(r.passed(), "{r}");
        }
        let r = verify_suite("claim2.2:n=1", None, &l).unwrap();
        assert!(r.to_string().starts_with("claim2.2:n=1: 16/16 agree"));
    }

    #[test]
    fn conp_first_falsifying_rule_misses_the_first_row() {
        // Every table with φ(0^n) true disagrees once, at 11·0^n.
        let r = verify_suite("claim2.8", None, &Limits::default()).unwrap();
        assert_eq!(r.disagreements, 2 + 8 + 128, "{r}");
        assert!(r
            .witnesses
            .iter()
            .all(|w| w.contains(": 11") && w.contains("king true, expected false")));
        assert!(r.notes.iter().any(|n| n.ends_with(": 0 mismatches")), "{r}");
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(
            verify_suite("nope", None, &Limits::default()),
            Err(Error::UnknownSuite(_))
        ));
        assert!(verify_suite("antenna:k=6", None, &Limits::default()).is_err());
    }
}
