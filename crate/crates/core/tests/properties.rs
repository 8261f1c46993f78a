//! Randomized invariants: whatever the helper under test accepts, the
//! algebraic laws hold — validation catches every single-site corruption,
//! canonical forms ignore presentation, variants preserve profiles, keys
//! survive multipliers, margins grow along residue classes, and every file
//! format round-trips losslessly.

use cyclesys::bounds::{catalog, BoundClaim, FormulaId};
use cyclesys::construct::{c5_mod1, c5_mod5, prime_short_system, sts_from_split};
use cyclesys::cyclic::{gcd, validate_cycle_system, Cycle, CycleSystem, DifferenceSystem, Zv};
use cyclesys::equivalence::{affine_key, apply_multiplier, census};
use cyclesys::files::{
    format_config, parse_config, parse_design_file, parse_manifest, parse_sequence_file,
    write_design_file, write_manifest, write_sequence_file, DesignHeader, DesignRole, Manifest,
    ManifestEntry, RunConfig, SequenceFile,
};
use cyclesys::skolem::{
    count_sequences, quick_sequence, target_set, validate_sequence, Family, SkolemError,
    SkolemKind, SkolemSequence,
};
use cyclesys::variants::{class_variant, sign_variant};
use proptest::prelude::*;

const KINDS: [SkolemKind; 4] =
    [SkolemKind::Pure, SkolemKind::Hooked, SkolemKind::Split, SkolemKind::SplitHooked];

const FAMILIES: [Family; 2] = [Family::Skolem, Family::Split];

// A cycle on a random odd modulus with random distinct vertices in random
// order; nearly always full-orbit, which is what the generic laws cover
// (short orbits get their own deterministic cases below).
fn arb_cycle() -> impl Strategy<Value = Cycle> {
    (3u64..=20)
        .prop_flat_map(|t| {
            let v = 2 * t + 1;
            let kmax = std::cmp::min(9, v as usize);
            (Just(v), 3..=kmax)
        })
        .prop_flat_map(|(v, k)| {
            prop::sample::subsequence((0..v).collect::<Vec<u64>>(), k)
                .prop_shuffle()
                .prop_map(move |verts| Cycle::from_residues(Zv::new(v).unwrap(), verts).unwrap())
        })
}

// One of the three always-verified constructions at a small order.
fn pentagon_mod1(n: u32) -> DifferenceSystem {
    let seq = (n >= 2).then(|| quick_sequence(n, Family::Skolem).unwrap());
    c5_mod1(n, seq.as_ref()).unwrap().system
}

fn pentagon_mod5(n: u32) -> DifferenceSystem {
    let seq = (n >= 2).then(|| quick_sequence(n, Family::Split).unwrap());
    c5_mod5(n, seq.as_ref()).unwrap().system
}

fn small_system(choice: u8, n: u32) -> DifferenceSystem {
    match choice % 3 {
        0 => sts_from_split(&quick_sequence(n, Family::Split).unwrap()).unwrap().system,
        1 => pentagon_mod1(n),
        _ => pentagon_mod5(n),
    }
}

fn signs_from(bits: &[bool], s: usize) -> Vec<i8> {
    (0..s).map(|i| if bits[i] { -1 } else { 1 }).collect()
}

fn profile_of(ds: &DifferenceSystem) -> Vec<Vec<u64>> {
    ds.difference_profile()
}

// ------------------------------------------------------ sequence substrate --

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    // Any single-site corruption of a valid sequence is caught: replacing
    // one value always moves its pair off target, and swapping two values
    // always misplaces both pairs.
    #[test]
    fn single_site_corruptions_never_validate(
        n in 2u32..=16,
        fam_idx in 0usize..2,
        i in 0usize..16,
        j in 0usize..16,
        w in 1u32..=34,
        swap in any::<bool>(),
    ) {
        let seq = quick_sequence(n, FAMILIES[fam_idx]).unwrap();
        prop_assert!(validate_sequence(&seq).is_valid());
        let nn = n as usize;
        let (i, j) = (i % nn, j % nn);
        let mut values = seq.values().to_vec();
        if swap {
            prop_assume!(i != j);
            values.swap(i, j);
        } else {
            prop_assume!(values[i] != w);
            values[i] = w;
        }
        let mutated = SkolemSequence::new(n, seq.kind(), values).unwrap();
        prop_assert!(!validate_sequence(&mutated).is_valid());
    }

    // The residue gate is airtight: a kind/order mismatch never enumerates,
    // and an admitted pair always has a target set of exactly 2n values.
    #[test]
    fn residue_gate_refuses_mismatches(n in 1u32..=40, kind_idx in 0usize..4) {
        let kind = KINDS[kind_idx];
        if kind.admits(n) {
            let target = target_set(n, kind).unwrap();
            prop_assert_eq!(target.len(), 2 * n as usize);
        } else {
            let refused = matches!(
                count_sequences(n, kind),
                Err(SkolemError::ResidueMismatch { .. })
            );
            prop_assert!(refused);
            prop_assert!(target_set(n, kind).is_err());
        }
    }
}

// ---------------------------------------------------------- cycle algebra --

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    // Canonical form is a presentation-free name: any rotation of the
    // vertex list, traversed in either direction, canonicalizes identically.
    #[test]
    fn canonical_form_ignores_rotation_and_direction(
        c in arb_cycle(),
        r in 0usize..9,
        flip in any::<bool>(),
    ) {
        let k = c.len();
        let mut verts: Vec<u64> =
            (0..k).map(|i| c.vertices()[(i + r) % k]).collect();
        if flip {
            verts.reverse();
        }
        let other = Cycle::from_residues(c.zv(), verts).unwrap();
        prop_assert_eq!(c.canonical(), other.canonical());
    }

    // Translations compose additively and never disturb the stored
    // orientation; the difference vector is translation-invariant verbatim.
    #[test]
    fn translations_compose_and_fix_differences(
        c in arb_cycle(),
        z1 in 0u64..200,
        z2 in 0u64..200,
    ) {
        let v = c.modulus();
        let (z1, z2) = (z1 % v, z2 % v);
        let stepwise = c.translate(z1).translate(z2);
        let joined = c.translate((z1 + z2) % v);
        prop_assert_eq!(stepwise.vertices(), joined.vertices());
        let identity = c.translate(0);
        prop_assert_eq!(identity.vertices(), c.vertices());
        prop_assert_eq!(c.partial_differences(), stepwise.partial_differences());
    }

    #[test]
    fn negation_is_an_involution(c in arb_cycle()) {
        let twice = c.negate().negate();
        prop_assert_eq!(twice.vertices(), c.vertices());
    }

    // Orbit-stabilizer at desk scale: the translation orbit size times the
    // cycle type is always the modulus.
    #[test]
    fn orbit_size_times_cycle_type_is_the_modulus(c in arb_cycle()) {
        let d = c.cycle_type();
        prop_assert_eq!(c.orbit().len() as u64 * d, c.modulus());
        prop_assert_eq!(gcd(c.len() as u64, c.modulus()) % d, 0);
    }

    // The closing-sum law: one period of raw consecutive differences sums
    // to l * (v/d) mod v with gcd(l, d) = 1 (full-orbit cycles close to 0
    // exactly), and the published profile is that period joined with its
    // negations, sorted.
    #[test]
    fn partial_differences_close_the_cycle(c in arb_cycle()) {
        let v = c.modulus();
        let d = c.cycle_type();
        let k = c.len();
        let period = k / d as usize;
        let verts = c.vertices();
        let raw: Vec<u64> =
            (0..period).map(|i| c.zv().sub(verts[(i + 1) % k], verts[i])).collect();
        let s = raw.iter().sum::<u64>() % v;
        prop_assert_eq!(s % (v / d), 0);
        let l = s / (v / d);
        prop_assert_eq!(gcd(l, d), 1);
        let mut expected: Vec<u64> =
            raw.iter().flat_map(|&x| [x, c.zv().neg(x)]).collect();
        expected.sort_unstable();
        prop_assert_eq!(c.partial_differences(), expected);
    }
}

// Short-orbit instances of the closing-sum law, which random vertex lists
// essentially never produce: the type-k subgroup cycles and the type-3
// triple (0, v/3, 2v/3) embedded in every STS construction.
#[test]
fn short_orbit_cycles_close_to_a_unit_multiple() {
    for (k, m) in [(3u64, 5u64), (5, 3), (5, 7), (7, 9), (11, 5), (13, 3)] {
        for cycle in prime_short_system(k, m).unwrap() {
            let v = cycle.modulus();
            let d = cycle.cycle_type();
            assert_eq!(d, k, "subgroup cycle has full type");
            let diffs = cycle.partial_differences();
            assert_eq!(diffs.len(), 2);
            let step = cycle.zv().sub(cycle.vertices()[1], cycle.vertices()[0]);
            let l = step / (v / d);
            assert_eq!(gcd(l, d), 1, "k={k} m={m}");
            assert_eq!(cycle.orbit().len() as u64, v / d);
        }
    }
    for n in 2u32..=8 {
        let sts = sts_from_split(&quick_sequence(n, Family::Split).unwrap()).unwrap().system;
        let v = sts.modulus();
        let short: Vec<&Cycle> =
            sts.starters().iter().filter(|c| c.cycle_type() == 3).collect();
        assert_eq!(short.len(), 1);
        assert_eq!(short[0].partial_differences(), vec![v / 3, 2 * v / 3]);
    }
}

// ------------------------------------------------------------ variants --

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Sign variants keep the profile, the starter count, and the starter
    // types, and the result still partitions the edge set.
    #[test]
    fn sign_variants_preserve_structure(
        choice in 0u8..3,
        n in 2u32..=6,
        bits in prop::collection::vec(any::<bool>(), 8),
    ) {
        let ds = small_system(choice, n);
        let t1 = ds.type1_indices();
        let sigma = signs_from(&bits, t1.len());
        let varied = sign_variant(&ds, &sigma).unwrap();
        prop_assert_eq!(profile_of(&varied), profile_of(&ds));
        prop_assert_eq!(varied.starters().len(), ds.starters().len());
        prop_assert_eq!(varied.type1_indices(), t1);
        prop_assert!(validate_cycle_system(&varied.expand()).is_valid());
    }

    // Distinct sign vectors expand to distinct designs (the distinctness
    // lever behind every lower-bound count).
    #[test]
    fn distinct_sign_vectors_give_distinct_designs(
        choice in 0u8..3,
        n in 2u32..=5,
        bits1 in prop::collection::vec(any::<bool>(), 8),
        bits2 in prop::collection::vec(any::<bool>(), 8),
    ) {
        let ds = small_system(choice, n);
        let s = ds.type1_indices().len();
        let (sigma1, sigma2) = (signs_from(&bits1, s), signs_from(&bits2, s));
        prop_assume!(sigma1 != sigma2);
        let key1 = sign_variant(&ds, &sigma1).unwrap().expand().design_key();
        let key2 = sign_variant(&ds, &sigma2).unwrap().expand().design_key();
        prop_assert_ne!(key1, key2);
    }

    // Same two laws for pentagon class variants.
    #[test]
    fn class_variants_preserve_structure(
        n in 1u32..=3,
        classes in prop::collection::vec(1usize..=24, 8),
    ) {
        let ds = pentagon_mod1(n);
        let t1 = ds.type1_indices();
        let phi = &classes[..t1.len()];
        let varied = class_variant(&ds, phi).unwrap();
        prop_assert_eq!(profile_of(&varied), profile_of(&ds));
        prop_assert_eq!(varied.starters().len(), ds.starters().len());
        prop_assert_eq!(varied.type1_indices(), t1);
        prop_assert!(validate_cycle_system(&varied.expand()).is_valid());
    }

    #[test]
    fn distinct_class_vectors_give_distinct_designs(
        n in 1u32..=3,
        classes1 in prop::collection::vec(1usize..=24, 8),
        classes2 in prop::collection::vec(1usize..=24, 8),
    ) {
        let ds = pentagon_mod1(n);
        let s = ds.type1_indices().len();
        let (phi1, phi2) = (&classes1[..s], &classes2[..s]);
        prop_assume!(phi1 != phi2);
        let key1 = class_variant(&ds, phi1).unwrap().expand().design_key();
        let key2 = class_variant(&ds, phi2).unwrap().expand().design_key();
        prop_assert_ne!(key1, key2);
    }
}

// ---------------------------------------------------------- equivalence --

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Affine keys are multiplier-invariant on every design in reach.
    #[test]
    fn multipliers_never_move_the_affine_key(
        class in 1usize..=24,
        u_idx in 0usize..16,
    ) {
        let ds = c5_mod1(1, None).unwrap().system;
        let sys = class_variant(&ds, &[class]).unwrap().expand();
        let units = sys.zv().units();
        let u = units[u_idx % units.len()];
        let image = apply_multiplier(&sys, u).unwrap();
        prop_assert_eq!(affine_key(&sys).unwrap(), affine_key(&image).unwrap());
    }

    // Census bookkeeping on arbitrary corpora: distinct matches a direct
    // quadratic comparison of cycle sets, and the lower bound is sandwiched
    // between its two sources.
    #[test]
    fn census_counts_are_sandwiched(
        picks in prop::collection::vec(1usize..=24, 1..=10),
    ) {
        let ds = c5_mod1(1, None).unwrap().system;
        let corpus: Vec<CycleSystem> = picks
            .iter()
            .map(|&i| class_variant(&ds, &[i]).unwrap().expand())
            .collect();
        let report = census(&corpus).unwrap();
        let keys: Vec<Vec<Vec<u64>>> = corpus
            .iter()
            .map(|s| {
                let mut cs: Vec<Vec<u64>> =
                    s.cycles().iter().map(|c| c.canonical().to_vec()).collect();
                cs.sort();
                cs
            })
            .collect();
        let mut quadratic = 0usize;
        for i in 0..keys.len() {
            if !keys[..i].contains(&keys[i]) {
                quadratic += 1;
            }
        }
        prop_assert_eq!(report.total, corpus.len());
        prop_assert_eq!(report.distinct, quadratic);
        let ceiling = (report.distinct as u64).div_ceil(report.phi);
        prop_assert_eq!(report.ceiling_bound, ceiling);
        prop_assert!(report.affine_classes as u64 >= ceiling);
        prop_assert!(report.affine_classes <= report.distinct);
        prop_assert_eq!(
            report.nonisomorphic_lower_bound,
            ceiling.max(report.affine_classes as u64)
        );
    }
}

// -------------------------------------------------------------- bounds --

fn k_generic_claims() -> Vec<BoundClaim> {
    catalog()
        .into_iter()
        .filter(|c| {
            matches!(
                c.id,
                FormulaId::CkMod1General
                    | FormulaId::CkMod1Residue7
                    | FormulaId::CkModkGeneral
                    | FormulaId::CkModkResidue28
            )
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // The cycle length cancels out of every length-generic margin.
    #[test]
    fn cycle_length_cancels_in_generic_margins(
        claim_idx in 0usize..6,
        offset in 0u32..300,
        half_k in 3u64..=49,
    ) {
        let claims = k_generic_claims();
        let claim = &claims[claim_idx % claims.len()];
        let n = (claim.threshold + offset..)
            .find(|&n| claim.id.applicable(n))
            .unwrap();
        let k = 2 * half_k + 1;
        let plain = claim.margin(n).unwrap().value.to_f64();
        let with_k = claim.margin_with_explicit_k(n, k).unwrap().value.to_f64();
        prop_assert!((plain - with_k).abs() < 1e-24);
    }

    // Stepping 28 orders (a whole residue period for every formula) always
    // increases the floor envelope, so a verified window really does extend
    // upward. The exact margin itself can dip across such a step whenever
    // the formula divides by a totient: phi(10n+5) may jump from a
    // factor-rich modulus to a prime-power one by more than 28 steps of
    // linear growth buy back (e.g. v = 13845 = 3*5*13*71 against
    // v = 14125 = 5^3*113). The envelope replaces phi(v) by v precisely to
    // absorb that oscillation, and the exact margin never falls below it.
    #[test]
    fn envelope_margins_grow_and_floor_the_exact_ones(
        claim_idx in 0usize..14,
        offset in 0u32..1500,
    ) {
        let claims = catalog();
        let claim = &claims[claim_idx % claims.len()];
        let n = (claim.threshold + offset..)
            .find(|&n| claim.id.applicable(n))
            .unwrap();
        prop_assert!(claim.id.applicable(n + 28));
        let env_here = claim.envelope_margin(n).unwrap().value.to_f64();
        let env_there = claim.envelope_margin(n + 28).unwrap().value.to_f64();
        prop_assert!(
            env_there > env_here,
            "envelope fell from {env_here} to {env_there} at n = {n}"
        );
        let here = claim.margin(n).unwrap().value.to_f64();
        prop_assert!(env_here <= here + 1e-15, "envelope above the exact margin");
    }
}

// ---------------------------------------------------------------- files --

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Config text survives a round trip for arbitrary field values, with
    // comments and blank lines ignored.
    #[test]
    fn config_round_trips_losslessly(
        n_enum in 0u32..=u32::MAX,
        search_node_limit in 0u64..=u64::MAX,
        search_time_limit_ms in 0u64..=u64::MAX,
        bound_window in 0u32..=u32::MAX,
        parallelism in 0usize..=4096,
    ) {
        let config = RunConfig {
            n_enum,
            search_node_limit,
            search_time_limit_ms,
            bound_window,
            parallelism,
        };
        let text = format_config(&config);
        prop_assert_eq!(parse_config(&text).unwrap(), config.clone());
        let noisy = format!("# leading comment\n\n{text}   \n# trailing\n");
        prop_assert_eq!(parse_config(&noisy).unwrap(), config);
    }

    #[test]
    fn sequence_files_round_trip(
        n in 2u32..=15,
        fam_idx in 0usize..2,
        copies in 1usize..=3,
    ) {
        let seq = quick_sequence(n, FAMILIES[fam_idx]).unwrap();
        let file = SequenceFile {
            n,
            kind: seq.kind(),
            sequences: vec![seq; copies],
        };
        let text = write_sequence_file(&file);
        prop_assert_eq!(parse_sequence_file(&text).unwrap(), file);
    }

    #[test]
    fn manifests_round_trip(
        v in 1u64..=10_000,
        k in 3usize..=31,
        recipe in "[a-z0-9-]{1,16}",
        variant_kind in prop::option::of("[a-z]{1,8}"),
        files in prop::collection::vec(("[a-z0-9/._-]{1,24}", "[0-9a-f]{64}"), 0..=5),
    ) {
        let manifest = Manifest {
            v,
            k,
            recipe: Some(recipe),
            variant_kind,
            files: files
                .into_iter()
                .map(|(path, sha256)| ManifestEntry { path, sha256 })
                .collect(),
        };
        let text = write_manifest(&manifest);
        prop_assert_eq!(parse_manifest(&text).unwrap(), manifest);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    // Design files round-trip bit-exactly in both roles, orientation
    // included, and re-expand to the same partition.
    #[test]
    fn design_files_round_trip(n in 1u32..=4, with_metadata in any::<bool>()) {
        let seq = (n >= 2).then(|| quick_sequence(n, Family::Skolem).unwrap());
        let built = c5_mod1(n, seq.as_ref()).unwrap();
        let ds = built.system;
        let mut header =
            DesignHeader::new(ds.modulus(), ds.k(), DesignRole::DifferenceSystem);
        if with_metadata {
            header.recipe = Some(format!("{:?}", built.recipe));
            header.trust = Some("verified".into());
            header.signs = Some("++-".into());
            header.classes = Some("1,2".into());
        }
        let text = write_design_file(&header, ds.starters());
        let parsed = parse_design_file(&text).unwrap();
        prop_assert_eq!(&parsed.header, &header);
        let ds_back = parsed.to_difference_system().unwrap();
        prop_assert_eq!(&ds_back, &ds);
        prop_assert_eq!(write_design_file(&parsed.header, ds_back.starters()), text);

        let sys = ds.expand();
        let header2 = DesignHeader::new(sys.modulus(), sys.k(), DesignRole::CycleSystem);
        let text2 = write_design_file(&header2, sys.cycles());
        let parsed2 = parse_design_file(&text2).unwrap();
        prop_assert_eq!(parsed2.to_cycle_system().unwrap(), sys);
    }
}
