//! Integration tests for the security-game harnesses: null results for the
//! genuine scheme, detection of a deliberately broken variant, validity
//! enforcement, and exact real/ideal agreement in the weak-simulation game.

use hfe_core::error::GameError;
use hfe_core::games::{
    estimate_advantage, find_function_privacy_adversary, find_message_privacy_adversary,
    find_weak_sim_adversary, function_privacy_adversaries, message_privacy_adversaries,
    multiset_distance, run_function_privacy_game, run_message_privacy_game, run_weak_sim_game,
    uniform_message_generator, validate_message_privacy_queries, AdversaryStrategy, EncMode,
    GameTranscript, WeakSimAdversary,
};
use hfe_core::hfe::{setup, BitString, Key, Permutation, SchemeParams};
use hfe_core::qubit::Bit;
use hfe_core::rng::rng_from_seed;

fn params() -> SchemeParams {
    SchemeParams::new(8, 8).unwrap()
}

#[test]
fn constant_adversary_has_zero_gap() {
    let adv = find_message_privacy_adversary("constant-zero").unwrap();
    let est = run_message_privacy_game(
        &adv,
        &params(),
        EncMode::Genuine,
        400,
        &mut rng_from_seed(1),
    )
    .unwrap();
    assert_eq!(est.gap(), 0.0);
}

#[test]
fn measurement_adversaries_have_null_advantage() {
    for adv in message_privacy_adversaries() {
        let est = run_message_privacy_game(
            &adv,
            &params(),
            EncMode::Genuine,
            2000,
            &mut rng_from_seed(7),
        )
        .unwrap();
        assert!(
            est.gap() <= est.bound,
            "{}: gap {} above bound {}",
            adv.descriptor(),
            est.gap(),
            est.bound
        );
    }
}

#[test]
fn function_privacy_adversaries_have_null_advantage() {
    for adv in function_privacy_adversaries() {
        let est = run_function_privacy_game(
            &adv,
            &params(),
            EncMode::Genuine,
            2000,
            &mut rng_from_seed(11),
        )
        .unwrap();
        assert!(
            est.gap() <= est.bound,
            "{}: gap {} above bound {}",
            adv.descriptor(),
            est.gap(),
            est.bound
        );
    }
}

#[test]
fn broken_variant_is_detected() {
    // pinning the encryption randomness exposes the message bit to the
    // inverse-rotation measurement
    let adv = find_message_privacy_adversary("rotation-measurer").unwrap();
    let est = run_message_privacy_game(
        &adv,
        &params(),
        EncMode::FixedRandomness(Bit::ZERO),
        2000,
        &mut rng_from_seed(13),
    )
    .unwrap();
    assert!(est.gap() > 0.9, "broken cipher escaped: gap {}", est.gap());
}

#[test]
fn genuine_scheme_beats_the_same_attack() {
    let adv = find_message_privacy_adversary("rotation-measurer").unwrap();
    let est = run_message_privacy_game(
        &adv,
        &params(),
        EncMode::Genuine,
        2000,
        &mut rng_from_seed(13),
    )
    .unwrap();
    assert!(est.gap() <= est.bound);
}

#[test]
fn invalid_message_privacy_adversary_is_rejected() {
    // querying the full-rank key while the message pair differs violates
    // validity
    let adv = AdversaryStrategy::new(
        "full-key-separator",
        |oracles: &mut hfe_core::games::MessagePrivacyOracles, rng| {
        let full = oracles.key_menu()[oracles.message_len() - 1].clone();
        oracles.query_keygen(&full)?;
        let m0 = BitString::zeros(oracles.message_len());
        let m1 = BitString::new(vec![Bit::ONE; oracles.message_len()]);
        let mut ct = oracles.query_enc(&m0, &m1)?;
        ct.measure(
            0,
            hfe_core::games::CtComponent::C1,
            hfe_core::games::MeasureBasis::Computational,
            rng,
        )
    });
    let err =
        run_message_privacy_game(&adv, &params(), EncMode::Genuine, 10, &mut rng_from_seed(17))
            .unwrap_err();
    assert!(matches!(err, GameError::InvalidAdversary(_)), "got {err:?}");
}

#[test]
fn mismatched_rank_key_pair_is_rejected() {
    // (rank-2, rank-3) with a message pair they evaluate differently on
    let adv = AdversaryStrategy::new(
        "rank-mismatch",
        |oracles: &mut hfe_core::games::FunctionPrivacyOracles, _rng| {
        let menu = oracles.key_menu();
        let k2 = match &menu[1] {
            Key::Classical(bits) => bits.clone(),
            Key::Aleph => unreachable!(),
        };
        let k3 = match &menu[2] {
            Key::Classical(bits) => bits.clone(),
            Key::Aleph => unreachable!(),
        };
        oracles.query_keygen_pair(&k2, &k3)?;
        let m = BitString::zeros(oracles.message_len());
        oracles.query_enc(&m, &m)?;
        Ok(Bit::ZERO)
    });
    let err =
        run_function_privacy_game(&adv, &params(), EncMode::Genuine, 10, &mut rng_from_seed(19))
            .unwrap_err();
    assert!(matches!(err, GameError::InvalidAdversary(_)), "got {err:?}");
}

#[test]
fn validity_examples_from_prefix_rule() {
    // Q = 4: the pair differs at position 3, so a rank-2 key sees equal
    // prefixes while a rank-3 key separates them
    let params = SchemeParams::new(4, 4).unwrap();
    let msk = setup(&params, Permutation::identity(4), &mut rng_from_seed(23)).unwrap();
    let m0 = BitString::parse_binary("0011").unwrap();
    let m1 = BitString::parse_binary("0001").unwrap();

    let mut transcript = GameTranscript::new(msk.digest());
    transcript.message_pair_queries.push((m0.clone(), m1.clone()));
    assert!(validate_message_privacy_queries(&transcript, &msk));

    transcript.key_queries.push(msk.designated_keys()[1].clone());
    assert!(validate_message_privacy_queries(&transcript, &msk));

    transcript.key_queries.push(msk.designated_keys()[2].clone());
    assert!(!validate_message_privacy_queries(&transcript, &msk));
}

#[test]
fn fuzzed_invalid_streams_always_rejected() {
    // every trial queries a key of rank q and a pair differing inside the
    // revealed prefix; the harness must reject them all before any guess
    // is recorded
    let params = params();
    for seed in 0..50u64 {
        let rank = (seed as usize % params.message_len()) + 1;
        let flip = seed as usize % rank;
        let adv = AdversaryStrategy::new(
            "fuzzed-invalid",
            move |oracles: &mut hfe_core::games::MessagePrivacyOracles, _rng| {
            let key = oracles.key_menu()[rank - 1].clone();
            oracles.query_keygen(&key)?;
            let m0 = BitString::zeros(oracles.message_len());
            let mut bits = vec![Bit::ZERO; oracles.message_len()];
            bits[flip] = Bit::ONE;
            let m1 = BitString::new(bits);
            oracles.query_enc(&m0, &m1)?;
            Ok(Bit::ZERO)
        });
        let err = run_message_privacy_game(
            &adv,
            &params,
            EncMode::Genuine,
            4,
            &mut rng_from_seed(1000 + seed),
        )
        .unwrap_err();
        assert!(matches!(err, GameError::InvalidAdversary(_)), "seed {seed}");
    }
}

#[test]
fn measurement_is_destructive() {
    let adv = AdversaryStrategy::new(
        "double-measure",
        |oracles: &mut hfe_core::games::MessagePrivacyOracles, rng| {
            let m = BitString::zeros(oracles.message_len());
            let mut ct = oracles.query_enc(&m, &m)?;
            ct.measure(
                0,
                hfe_core::games::CtComponent::C1,
                hfe_core::games::MeasureBasis::Computational,
                rng,
            )?;
            // a second readout of the same qubit must fail
            match ct.measure(
                0,
                hfe_core::games::CtComponent::C1,
                hfe_core::games::MeasureBasis::Computational,
                rng,
            ) {
                Err(GameError::QubitConsumed { .. }) => Ok(Bit::ZERO),
                other => panic!("expected QubitConsumed, got {other:?}"),
            }
        },
    );
    let est =
        run_message_privacy_game(&adv, &params(), EncMode::Genuine, 4, &mut rng_from_seed(47))
            .unwrap();
    assert_eq!(est.gap(), 0.0);
}

#[test]
fn out_of_range_block_is_rejected() {
    let adv = AdversaryStrategy::new(
        "overreach",
        |oracles: &mut hfe_core::games::MessagePrivacyOracles, rng| {
            let m = BitString::zeros(oracles.message_len());
            let mut ct = oracles.query_enc(&m, &m)?;
            ct.measure(
                ct.num_blocks(),
                hfe_core::games::CtComponent::C0,
                hfe_core::games::MeasureBasis::Computational,
                rng,
            )
        },
    );
    let err =
        run_message_privacy_game(&adv, &params(), EncMode::Genuine, 1, &mut rng_from_seed(53))
            .unwrap_err();
    assert!(matches!(err, GameError::BlockOutOfRange(_)));
}

#[test]
fn unequal_pair_lengths_are_invalid() {
    let adv = AdversaryStrategy::new(
        "short-left",
        |oracles: &mut hfe_core::games::MessagePrivacyOracles, _rng| {
            let m0 = BitString::zeros(oracles.message_len() - 1);
            let m1 = BitString::zeros(oracles.message_len());
            oracles.query_enc(&m0, &m1)?;
            Ok(Bit::ZERO)
        },
    );
    let err =
        run_message_privacy_game(&adv, &params(), EncMode::Genuine, 1, &mut rng_from_seed(59))
            .unwrap_err();
    assert!(matches!(err, GameError::InvalidAdversary(_)));

    let adv = AdversaryStrategy::new(
        "short-key",
        |oracles: &mut hfe_core::games::FunctionPrivacyOracles, _rng| {
            let short = BitString::zeros(oracles.lambda() - 1);
            let full = BitString::zeros(oracles.lambda());
            oracles.query_keygen_pair(&short, &full)?;
            Ok(Bit::ZERO)
        },
    );
    let err =
        run_function_privacy_game(&adv, &params(), EncMode::Genuine, 1, &mut rng_from_seed(61))
            .unwrap_err();
    assert!(matches!(err, GameError::InvalidAdversary(_)));
}

#[test]
fn budget_exhaustion_is_reported() {
    let adv = AdversaryStrategy::new(
        "query-flood",
        |oracles: &mut hfe_core::games::MessagePrivacyOracles, _rng| {
        let m = BitString::zeros(oracles.message_len());
        loop {
            oracles.query_enc(&m, &m)?;
        }
    });
    let err =
        run_message_privacy_game(&adv, &params(), EncMode::Genuine, 1, &mut rng_from_seed(29))
            .unwrap_err();
    assert!(matches!(err, GameError::BudgetExhausted(_)));
}

#[test]
fn weak_sim_transcripts_match_exactly() {
    for adv in hfe_core::games::weak_sim_adversaries() {
        let (real, ideal) = run_weak_sim_game(
            &uniform_message_generator,
            &adv,
            &params(),
            500,
            &mut rng_from_seed(31),
        )
        .unwrap();
        assert_eq!(real.len(), 500);
        assert_eq!(
            multiset_distance(&real, &ideal),
            0.0,
            "adversary {} separated the worlds",
            adv.descriptor()
        );
        // matched seeds give tuple-by-tuple equality, not just multiset
        for (r, i) in real.iter().zip(&ideal) {
            assert_eq!(r, i);
        }
    }
}

#[test]
fn weak_sim_echo_alpha_reflects_answers() {
    let adv = find_weak_sim_adversary("echo").unwrap();
    let (real, _ideal) = run_weak_sim_game(
        &uniform_message_generator,
        &adv,
        &params(),
        20,
        &mut rng_from_seed(37),
    )
    .unwrap();
    for t in &real {
        let m = t.message.as_ref().unwrap().to_string();
        // first answer is the rank-1 prefix, second the full message
        let parts: Vec<&str> = t.alpha.split('|').collect();
        assert_eq!(parts[0], &m[..1]);
        assert_eq!(parts[1], m);
        assert_eq!(parts[2], "");
    }
}

#[test]
fn weak_sim_no_queries_depends_only_on_view() {
    let adv = find_weak_sim_adversary("no-queries").unwrap();
    let (real, ideal) = run_weak_sim_game(
        &uniform_message_generator,
        &adv,
        &params(),
        50,
        &mut rng_from_seed(41),
    )
    .unwrap();
    for (r, i) in real.iter().zip(&ideal) {
        assert!(r.key_queries.is_empty());
        assert_eq!(r.alpha, format!("{}:8", r.tau));
        assert_eq!(r, i);
    }
}

#[test]
fn multiset_distance_detects_differences() {
    let a = GameTranscript::new("x".into());
    let mut b = a.clone();
    b.alpha = "different".into();
    assert_eq!(multiset_distance(std::slice::from_ref(&a), std::slice::from_ref(&a)), 0.0);
    assert_eq!(multiset_distance(std::slice::from_ref(&a), &[b.clone()]), 1.0);
    assert_eq!(multiset_distance(&[a.clone(), b.clone()], &[a, b]), 0.0);
}

#[test]
fn perfect_distinguisher_sanity_check() {
    let zeros = vec![Bit::ZERO; 1000];
    let ones = vec![Bit::ONE; 1000];
    let est = estimate_advantage(&zeros, &ones).unwrap();
    assert_eq!(est.gap(), 1.0);
}

#[test]
fn unknown_adversary_names_are_absent() {
    assert!(find_message_privacy_adversary("nonexistent").is_none());
    assert!(find_function_privacy_adversary("nonexistent").is_none());
    assert!(find_weak_sim_adversary("nonexistent").is_none());
}

#[test]
fn custom_weak_sim_adversary_also_matches() {
    // a strategy that post-processes answers through a nontrivial map
    let adv = WeakSimAdversary::new("answer-lengths", |view, open, _rng| {
        let mut total = 0usize;
        for idx in 0..view.revealed_len.min(3) {
            let key = match &view.key_menu[idx] {
                Key::Classical(bits) => bits.clone(),
                Key::Aleph => unreachable!(),
            };
            total += open(&key)?.len();
        }
        Ok(format!("sum={total}"))
    });
    let (real, ideal) = run_weak_sim_game(
        &uniform_message_generator,
        &adv,
        &params(),
        200,
        &mut rng_from_seed(43),
    )
    .unwrap();
    assert_eq!(multiset_distance(&real, &ideal), 0.0);
}
