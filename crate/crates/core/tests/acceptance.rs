//! Acceptance suite: one check per numbered criterion, each with a time limit.
//!
//! Runs without the libtest harness so that it can print a single
//! `criterion N: PASS|FAIL` line per check. Exits nonzero if any check fails.

mod common;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use xtrie_core::coder::{compress_with_interval, decompress};
use xtrie_core::combinatorics::{
    canonical_rotation, count_all_tries, count_tries, distributions, enumerate_tries, matrix_to_trie, rotate,
    trie_to_matrix, DEFAULT_ENUMERATION_CAP,
};
use xtrie_core::entropy::{entropy_report, le_tol, make_complete_binary_trie, make_level_alphabet_trie};
use xtrie_core::gen::{letters, random_counts, random_dictionary, random_matrix};
use xtrie_core::succinct::{
    code_width, decode_block, default_block_size, encode_block, id_rank_by_binary_search, BitAccess, BoostedBitvector,
    PlainBitvector, SelectOverlay,
};
use xtrie_core::trie::Trie;
use xtrie_core::xbwt::{build_index, colex_sort, space_report, IndexOptions};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- criterion 1

fn pascal_binomial(n: usize, k: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

fn criterion_1() -> Result<String, String> {
    let mut tries = 0usize;
    for sigma in 1..=3usize {
        for n in 1..=6usize {
            let oracle = all_tries_oracle(n, sigma);
            let mut by_dist: HashMap<Vec<u64>, BTreeSet<Vec<(usize, usize)>>> = HashMap::new();
            for shape in &oracle {
                let mut counts = vec![0u64; sigma];
                for &(_, c) in shape {
                    counts[c] += 1;
                }
                by_dist.entry(counts).or_default().insert(shape.clone());
            }
            let mut total = 0u128;
            for dist in distributions(n as u64, sigma) {
                let found =
                    enumerate_tries(&dist, &letters(sigma), DEFAULT_ENUMERATION_CAP).map_err(|e| e.to_string())?;
                let product: u128 = dist.counts().iter().map(|&c| pascal_binomial(n, c as usize)).product();
                ensure(product.is_multiple_of(n as u128), || format!("n={n} does not divide {product}"))?;
                let formula = product / n as u128;
                ensure(found.len() as u128 == formula, || {
                    format!("{:?}: enumerated {} but formula gives {formula}", dist.counts(), found.len())
                })?;
                ensure(count_tries(&dist) == BigUint::from(formula), || format!("{:?}: count_tries", dist.counts()))?;
                let shapes: BTreeSet<_> = found.iter().map(shape_of).collect();
                let expected = by_dist.remove(dist.counts()).unwrap_or_default();
                ensure(shapes.len() == found.len() && shapes == expected, || {
                    format!("{:?}: enumerated tries differ from the recursive generator", dist.counts())
                })?;
                total += formula;
                tries += found.len();
            }
            ensure(by_dist.is_empty(), || format!("n={n} σ={sigma}: distributions missed"))?;
            // Vandermonde: the sum over distributions is C(σn, n-1)/n.
            let closed = pascal_binomial(sigma * n, n - 1) / n as u128;
            ensure(total == closed && oracle.len() as u128 == closed, || {
                format!("n={n} σ={sigma}: sum {total}, closed form {closed}, recursive {}", oracle.len())
            })?;
            ensure(count_all_tries(n as u64, sigma as u64) == BigUint::from(closed), || "count_all_tries".into())?;
        }
    }
    Ok(format!("{tries} tries enumerated for n ≤ 6, σ ≤ 3"))
}

// ---------------------------------------------------------------- criterion 2

fn criterion_2() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..1000 {
        let t = any_random_trie(&mut rng, 120, 5);
        let m = trie_to_matrix(&t);
        ensure(m.lukasiewicz().is_valid(), || format!("trie {i}: path not valid"))?;
        let back = matrix_to_trie(&m, t.alphabet()).map_err(|e| e.to_string())?;
        ensure(back == t, || format!("trie {i}: round trip changed the trie"))?;
    }
    for i in 0..200 {
        let n = rng.random_range(1..=40);
        let sigma = rng.random_range(1..=4);
        let counts = random_counts(&mut rng, n, sigma);
        let m = random_matrix(&mut rng, n, &counts);
        let rotations: Vec<_> = (0..n).map(|r| rotate(&m, r)).collect();
        let distinct: HashSet<_> = rotations.iter().collect();
        ensure(distinct.len() == n, || format!("matrix {i}: only {} of {n} rotations distinct", distinct.len()))?;
        let valid: Vec<usize> = (0..n).filter(|&r| rotations[r].lukasiewicz().is_valid()).collect();
        ensure(valid == vec![canonical_rotation(&m)], || format!("matrix {i}: valid rotations {valid:?}"))?;
    }
    Ok("1000 round trips, 200 rotation classes".into())
}

// ---------------------------------------------------------------- criterion 3

fn criterion_3() -> Result<String, String> {
    let t = small_trie();
    let (code, interval) = compress_with_interval(&t, 0);
    let q = |a: u32, b: u32| BigRational::new(a.into(), b.into());
    ensure(interval.l() == q(115, 128), || format!("l = {}", interval.l()))?;
    ensure(interval.s() == q(27, 4096), || format!("s = {}", interval.s()))?;
    ensure(code.d == 9 && code.bit_string() == "111001101", || format!("d = {}, bits {}", code.d, code.bit_string()))?;
    ensure(decompress(&code).map_err(|e| e.to_string())? == t, || "decoded trie differs".into())?;
    Ok("l = 115/2^7, s = 27/2^12, bits 111001101".into())
}

// ---------------------------------------------------------------- criterion 4

fn check_coder(t: &Trie, k: usize) -> Result<(), String> {
    let (code, interval) = compress_with_interval(t, k);
    let nh = nhk_oracle(t, k);
    let back = decompress(&code).map_err(|e| format!("k={k}: {e}"))?;
    ensure(&back == t, || format!("k={k} n={}: decode mismatch", t.len()))?;
    ensure(code.d as f64 <= (nh - 1e-9 * nh.max(1.0)).ceil().max(0.0) + 2.0, || {
        format!("k={k} n={}: d = {} exceeds ⌈{nh}⌉ + 2", t.len(), code.d)
    })?;
    let neg_log = interval.neg_log2_size();
    ensure(close(neg_log, nh, 1e-9), || format!("k={k} n={}: -log2 s = {neg_log}, nH_k = {nh}", t.len()))
}

fn criterion_4() -> Result<String, String> {
    let mut checked = 0;
    for sigma in 1..=3usize {
        for n in 1..=6u64 {
            for dist in distributions(n, sigma) {
                for t in enumerate_tries(&dist, &letters(sigma), DEFAULT_ENUMERATION_CAP).map_err(|e| e.to_string())? {
                    for k in 0..=2 {
                        check_coder(&t, k)?;
                        checked += 1;
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..500 {
        let t = any_random_trie(&mut rng, 300, 6);
        for k in 0..=2 {
            check_coder(&t, k)?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (trie, k) pairs"))
}

// ---------------------------------------------------------------- criterion 5

fn check_entropy(t: &Trie) -> Result<(), String> {
    let (n, sigma) = (t.len(), t.sigma());
    let report = entropy_report(t, 4);
    let oracles: Vec<_> = (0..=4).map(|k| context_oracle(t, k)).collect();
    for (level, o) in report.levels.iter().zip(&oracles) {
        ensure(close(level.nh_k, o.nh, 1e-9) && close(level.nh_label_k, o.label, 1e-9), || {
            format!("n={n} k={}: entropy differs from the oracle", level.k)
        })?;
        ensure(le_tol(o.nh, o.label + 1.443 * n as f64), || {
            format!("n={n} k={}: nH_k = {} > label bound {}", level.k, o.nh, o.label + 1.443 * n as f64)
        })?;
    }
    for k in 0..=3 {
        ensure(le_tol(oracles[k + 1].nh, oracles[k].nh), || {
            format!("n={n}: nH_{} = {} > nH_{k} = {}", k + 1, oracles[k + 1].nh, oracles[k].nh)
        })?;
    }
    let counts = t.symbol_distribution();
    let h_wc: f64 = counts.counts().iter().map(|&c| log2_binomial(n as u64, c)).sum::<f64>() - (n as f64).log2();
    ensure(close(report.h_wc, h_wc, 1e-9), || format!("n={n}: H_wc {} vs {h_wc}", report.h_wc))?;
    let nh0 = oracles[0].nh;
    let lower = nh0 - sigma as f64 * ((n + 1) as f64).log2() - (n as f64).log2();
    let upper = nh0 - (n as f64).log2();
    ensure(le_tol(lower, h_wc) && le_tol(h_wc, upper), || format!("n={n}: {lower} ≤ {h_wc} ≤ {upper} fails"))?;
    ensure(report.all_hold(), || format!("n={n}: report flags a violated bound"))
}

fn criterion_5() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        check_entropy(&any_random_trie(&mut rng, 500, 16))?;
    }
    for (y, h) in [(1, 4), (2, 2), (2, 3), (3, 3), (2, 5)] {
        check_entropy(&make_level_alphabet_trie(y, h))?;
    }
    for h in 0..=10 {
        check_entropy(&make_complete_binary_trie(h))?;
    }
    Ok("500 random tries plus both families".into())
}

// ---------------------------------------------------------------- criterion 6

fn criterion_6() -> Result<String, String> {
    let t = make_level_alphabet_trie(2, 3);
    ensure(t.len() == 15 && t.sigma() == 6, || "family shape".into())?;
    for k in 1..=3 {
        let o = context_oracle(&t, k);
        ensure(o.nh == 0.0, || format!("nH_{k} = {}", o.nh))?;
        ensure(xtrie_core::entropy::empirical_entropy(&t, k) == 0.0, || format!("library nH_{k} nonzero"))?;
    }
    let mut least = f64::INFINITY;
    for k in 0..=4 {
        let label = context_oracle(&t, k).label;
        ensure(label >= 14.0 - 1e-9, || format!("label entropy at k={k} is {label}"))?;
        ensure(close(xtrie_core::entropy::label_entropy(&t, k), label, 1e-9), || format!("library label k={k}"))?;
        least = least.min(label);
    }
    Ok(format!("nH_1..3 = 0, min label entropy {least:.3}"))
}

// ---------------------------------------------------------------- criterion 7

fn criterion_7() -> Result<String, String> {
    let t = sample28();
    let order = colex_sort(&t);
    let expected = sample28_ranks_by_path();
    for u in 0..t.len() {
        let want = expected[&t.path_label(u)];
        ensure(order.rank(u) == want, || format!("node {:?} has rank {} not {want}", t.path_label(u), order.rank(u)))?;
    }
    let idx = build_index(&t, IndexOptions::default());
    for (c, ones) in SAMPLE28_ROWS.iter().enumerate() {
        let got: Vec<usize> = (1..=28).filter(|&i| idx.row(c).get(i).unwrap()).collect();
        ensure(got == *ones, || format!("row {c}: {got:?}"))?;
    }
    let r = idx.runs().r;
    ensure(r == 12 && runs_oracle(&t) == 12, || format!("r = {r}"))?;
    ensure(idx.parent(17) == Ok(21), || format!("parent(17) = {:?}", idx.parent(17)))?;
    for h in 2..=8 {
        let t = make_complete_binary_trie(h);
        let n = t.len();
        let r = build_index(&t, IndexOptions::default()).runs().r;
        ensure(r == n.div_ceil(2) && runs_oracle(&t) == r, || format!("h={h}: r = {r}, n = {n}"))?;
    }
    Ok("28-node ranks, r = 12, parent(17) = 21, complete binary r = (n+1)/2".into())
}

// ---------------------------------------------------------------- criterion 8

/// The 200 random tries shared by the query and space criteria.
fn query_corpus() -> Vec<Trie> {
    let mut rng = ChaCha8Rng::seed_from_u64(800);
    (0..200).map(|_| any_random_trie(&mut rng, 200, 4)).collect()
}

fn criterion_8() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut queries = 0usize;
    for (trial, t) in query_corpus().iter().enumerate() {
        let sigma = t.sigma();
        let idx = build_index(t, IndexOptions { block_size: Some(rng.random_range(1..=40)), ..Default::default() });
        let order = colex_oracle(t);
        let mut rank = vec![0; t.len()];
        for (i, &u) in order.iter().enumerate() {
            rank[u] = i + 1;
        }
        // Suffix occurrences of every path pattern up to length 6.
        let mut occ: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (u, &r) in rank.iter().enumerate() {
            let p = t.path_label(u);
            for len in 0..=p.len().min(6) {
                occ.entry(p[p.len() - len..].to_vec()).or_default().push(r);
            }
        }
        let sym = |p: &[usize]| p.iter().map(|&c| t.alphabet().symbol(c)).collect::<Vec<_>>();
        for (p, ranks) in &occ {
            let res = idx.count(&sym(p));
            let (lo, hi) = (*ranks.iter().min().unwrap(), *ranks.iter().max().unwrap());
            ensure(res.count == ranks.len() && res.i == lo && res.j == hi && hi - lo + 1 == ranks.len(), || {
                format!("trial {trial}: pattern {p:?} gave {res:?}, expected {} in [{lo}, {hi}]", ranks.len())
            })?;
            queries += 1;
        }
        // Every string up to length 3, including absent ones.
        let mut all = vec![vec![]];
        for _ in 0..3 {
            let next: Vec<Vec<usize>> =
                all.iter().flat_map(|p: &Vec<usize>| (0..sigma).map(move |c| [p.as_slice(), &[c]].concat())).collect();
            for p in &next {
                let want = occ.get(p).map_or(0, Vec::len);
                ensure(idx.count(&sym(p)).count == want, || format!("trial {trial}: pattern {p:?}"))?;
                queries += 1;
            }
            all = next;
        }
        for _ in 0..100 {
            let len = rng.random_range(1..=8);
            let p: Vec<usize> = (0..len).map(|_| rng.random_range(0..sigma.max(1))).collect();
            let foreign = rng.random_bool(0.1) || sigma == 0;
            let mut s = sym(&p[..if sigma == 0 { 0 } else { len }]);
            if foreign {
                s.insert(rng.random_range(0..=s.len()), 'z' as u32);
            }
            let want = if foreign { 0 } else { count_oracle(t, &p) };
            ensure(idx.count(&s).count == want, || format!("trial {trial}: random pattern {s:?}"))?;
            queries += 1;
        }
        for u in 0..t.len() {
            let i = rank[u];
            for c in 0..sigma {
                ensure(idx.child(i, c) == Ok(t.child(u, c).map(|v| rank[v])), || {
                    format!("trial {trial}: child({i}, {c})")
                })?;
            }
            let kids = t.children(u);
            for k in 1..=kids.len() + 1 {
                ensure(idx.kth_child(i, k) == Ok(kids.get(k - 1).map(|&v| rank[v])), || {
                    format!("trial {trial}: kth_child({i}, {k})")
                })?;
            }
            if let Some(p) = t.parent(u) {
                ensure(idx.parent(i) == Ok(rank[p]), || format!("trial {trial}: parent({i})"))?;
            } else {
                ensure(idx.parent(i).is_err(), || "root has a parent".into())?;
            }
        }
    }
    Ok(format!("{queries} count queries plus exhaustive navigation"))
}

// ---------------------------------------------------------------- criterion 9

/// Oracle values of one trie shared by every block size.
struct SpaceOracle {
    contexts: Vec<ContextOracle>,
    runs: usize,
}

fn check_space(t: &Trie, o: &SpaceOracle, block: Option<usize>) -> Result<bool, String> {
    let (n, sigma) = (t.len(), t.sigma());
    let idx = build_index(t, IndexOptions { block_size: block, ..Default::default() });
    let b = idx.block_size();
    let mut nonempty = 0;
    for c in 0..sigma {
        let row = idx.row(c);
        let bits = row.to_bits();
        nonempty += bits.chunks(b).filter(|chunk| chunk.iter().any(|&x| x != row.is_complemented())).count();
    }
    let report = space_report(&idx, t, 3);
    for k in 0..=1 {
        let o = &o.contexts[k];
        let bound = o.nh + (sigma * n.div_ceil(b)) as f64 + nonempty as f64 + (sigma * (o.contexts - 1) * b) as f64;
        ensure(le_tol(idx.payload_bits() as f64, bound), || {
            format!("n={n} σ={sigma} b={b} k={k}: payload {} > bound {bound}", idx.payload_bits())
        })?;
        ensure(report.levels[k].holds, || format!("n={n}: space report disagrees at k={k}"))?;
    }
    let r = o.runs;
    ensure(r == idx.runs().r, || format!("n={n}: runs {} vs oracle {r}", idx.runs().r))?;
    for k in 0..=3 {
        let nh = o.contexts[k].nh;
        let bound = nh + (sigma as f64).powi(k as i32 + 1);
        ensure(le_tol(r as f64, bound), || format!("n={n} σ={sigma} k={k}: r = {r} > {bound}"))?;
    }
    let counts = t.symbol_distribution();
    let balanced = counts.counts().iter().all(|&c| 2 * c <= n as u64);
    if balanced {
        let sum: f64 = counts.counts().iter().map(|&c| log2_binomial(n as u64, c)).sum();
        let floor = n as f64 - 1.0 - (n as f64).log2();
        ensure(le_tol(floor, sum), || format!("n={n}: Σ log C = {sum} < {floor}"))?;
    }
    for c in 0..sigma {
        check_id_rank(idx.row(c), 64)?;
    }
    Ok(balanced)
}

/// Checks `id_rank` at roughly `samples` evenly spread positions, or at all
/// of them when the bitvector is short.
fn check_id_rank<B: BitAccess>(v: &B, samples: usize) -> Result<(), String> {
    let bits = v.to_bits();
    let ones = v.count_ones();
    let limit = if ones == 0 { 0 } else { (ones as f64).log2().ceil() as usize + 1 };
    let step = (bits.len() / samples).max(1);
    let positions = (0..=bits.len()).step_by(step).chain([bits.len()]);
    for i in positions {
        let (r, probes) = id_rank_by_binary_search(v, i).map_err(|e| e.to_string())?;
        ensure(r == naive_rank(&bits, i) && probes <= limit, || {
            format!("id_rank({i}) = ({r}, {probes}) with {ones} ones, limit {limit}")
        })?;
    }
    Ok(())
}

fn criterion_9() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut tries = query_corpus();
    tries.extend((0..100).map(|_| any_random_trie(&mut rng, 2000, 8)));
    for _ in 0..30 {
        let words = rng.random_range(1..200);
        let sigma = rng.random_range(1..=10);
        let dict = random_dictionary(&mut rng, words, 12, sigma);
        tries.push(Trie::build_from_dictionary(&dict, letters(sigma)).map_err(|e| e.to_string())?);
    }
    tries.push(make_level_alphabet_trie(2, 3));
    tries.push(make_level_alphabet_trie(3, 4));
    tries.extend((1..=10).map(make_complete_binary_trie));
    tries.push(sample28());
    let mut balanced = 0;
    for t in &tries {
        let o = SpaceOracle { contexts: (0..=3).map(|k| context_oracle(t, k)).collect(), runs: runs_oracle(t) };
        for block in [None, Some(8), Some(rng.random_range(1..=100))] {
            balanced += check_space(t, &o, block)? as usize;
        }
    }
    ensure(balanced > 0, || "no trie had every n_c ≤ n/2".into())?;
    let mut vectors = 0;
    for len in [1, 5, 64, 65, 300, 2000] {
        for density in [0.0, 0.01, 0.3, 0.5, 0.99, 1.0] {
            let bits = random_bits(&mut rng, len, density);
            check_id_rank(&PlainBitvector::from_bits(&bits), usize::MAX)?;
            check_id_rank(&BoostedBitvector::build(&bits, 16), usize::MAX)?;
            check_id_rank(&BoostedBitvector::build_with(&bits, 9, true), usize::MAX)?;
            vectors += 1;
        }
    }
    Ok(format!("{} tries ({balanced} balanced runs), {vectors} id_rank vectors", tries.len()))
}

// --------------------------------------------------------------- criterion 10

fn check_bitvector<B: BitAccess>(v: &B, bits: &[bool], what: &str) -> Result<(), String> {
    let ones = naive_rank(bits, bits.len());
    ensure(v.len() == bits.len() && v.count_ones() == ones, || format!("{what}: length or ones"))?;
    ensure(v.rank1(0) == Ok(0), || format!("{what}: rank1(0)"))?;
    let mut r = 0;
    for i in 1..=bits.len() {
        if bits[i - 1] {
            r += 1;
        }
        ensure(v.get(i) == Ok(bits[i - 1]), || format!("{what}: get({i})"))?;
        ensure(v.rank1(i) == Ok(r), || format!("{what}: rank1({i})"))?;
        ensure(v.prank(i) == Ok(bits[i - 1].then_some(r)), || format!("{what}: prank({i})"))?;
    }
    for j in 1..=ones {
        ensure(v.select1(j).ok() == naive_select(bits, j), || format!("{what}: select1({j})"))?;
    }
    ensure(v.select1(ones + 1).is_err() && v.select1(0).is_err(), || format!("{what}: select1 out of range"))?;
    ensure(v.get(bits.len() + 1).is_err() && v.rank1(bits.len() + 1).is_err(), || format!("{what}: bounds"))?;
    Ok(())
}

fn criterion_10() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let lengths: Vec<usize> = (1..=64).chain([1000, 10000]).collect();
    let densities = [0.0, 0.01, 0.5, 0.99, 1.0];
    for v in 0..1000 {
        let len = lengths[v % lengths.len()];
        let density = densities[(v / lengths.len()) % densities.len()];
        let bits = random_bits(&mut rng, len, density);
        let ones: Vec<usize> = (1..=len).filter(|&i| bits[i - 1]).collect();
        check_bitvector(&PlainBitvector::from_bits(&bits), &bits, "plain")?;
        let zeros: Vec<usize> = (1..=len).filter(|&i| !bits[i - 1]).collect();
        let plain = PlainBitvector::from_bits(&bits);
        for (j, &p) in zeros.iter().enumerate() {
            ensure(plain.select0(j + 1) == Ok(p), || format!("plain select0({})", j + 1))?;
        }
        let blocks = [1, 7, 64, 100, default_block_size(len, 4)];
        for &b in &blocks[..if len >= 1000 { 5 } else { 3 }] {
            for complemented in [false, true] {
                let boosted = BoostedBitvector::build_with(&bits, b, complemented);
                let what = format!("boosted b={b} complemented={complemented} len={len}");
                check_bitvector(&boosted, &bits, &what)?;
                ensure(boosted.decode_all() == bits, || format!("{what}: decode_all"))?;
                let counts: Vec<usize> = (0..boosted.blocks()).map(|i| boosted.block_ones(i)).collect();
                let rows = [boosted];
                let overlay = SelectOverlay::build(&[counts]);
                for (j, &p) in ones.iter().enumerate() {
                    ensure(overlay.select(&rows, 0, j + 1) == Ok(p), || format!("{what}: overlay select({})", j + 1))?;
                }
            }
        }
    }
    let mut blocks = 0;
    for w in 0..=12usize {
        let mut seen: HashMap<usize, BTreeSet<BigUint>> = HashMap::new();
        for mask in 0u32..(1 << w) {
            let bits: Vec<bool> = (0..w).map(|i| mask >> i & 1 == 1).collect();
            let block = encode_block(&bits);
            let x = mask.count_ones() as usize;
            let c = pascal_binomial(w, x);
            ensure(block.width == w && block.ones == x && block.offset < BigUint::from(c), || {
                format!("w={w} mask={mask:b}: {block:?}")
            })?;
            ensure(decode_block(&block) == bits, || format!("w={w} mask={mask:b}: decode"))?;
            ensure(
                (1u128 << code_width(w, x)) >= c && (code_width(w, x) == 0 || 1u128 << (code_width(w, x) - 1) < c),
                || format!("code_width({w}, {x})"),
            )?;
            seen.entry(x).or_default().insert(block.offset);
            blocks += 1;
        }
        for (x, offsets) in seen {
            ensure(offsets.len() as u128 == pascal_binomial(w, x), || format!("w={w} x={x}: offsets not a bijection"))?;
        }
    }
    Ok(format!("1000 vectors, {blocks} enumerative blocks"))
}

fn main() -> ExitCode {
    let checks: [(u32, Check, u64); 10] = [
        (1, criterion_1, 10),
        (2, criterion_2, 5),
        (3, criterion_3, 5),
        (4, criterion_4, 60),
        (5, criterion_5, 30),
        (6, criterion_6, 5),
        (7, criterion_7, 5),
        (8, criterion_8, 60),
        (9, criterion_9, 60),
        (10, criterion_10, 30),
    ];
    // Keep panics from failing checks on one line in the report.
    std::panic::set_hook(Box::new(|_| {}));
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, check, limit) in checks {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(limit) => Err(format!("took longer than {limit} s")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {id}: PASS ({:.2} s, limit {limit} s) {detail}", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {id}: FAIL ({:.2} s, limit {limit} s) {why}", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
