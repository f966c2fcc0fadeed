mod common;

use logbase_ir::index::build_index;
use logbase_ir::retrieval::Scorer;
use logbase_ir::weighting::WeightScheme;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn inverted_index_matches_dense_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for corpus in 0..200 {
        let (docs, queries) = common::random_corpus(&mut rng, 10, 15, 5);
        let index = build_index(&docs).unwrap();
        for base in [10.0, 2.0, 0.5, std::f64::consts::E] {
            let scorer = Scorer::new(&index, &WeightScheme::new(base).unwrap());
            for (qid, tokens) in &queries {
                let got: Vec<(u32, f64)> =
                    scorer.rank_tokens(*qid, tokens).entries.iter().map(|e| (e.doc_id, e.score)).collect();
                let want = common::dense_rank(&docs, tokens, base);
                let order = |v: &[(u32, f64)]| v.iter().map(|e| e.0).collect::<Vec<_>>();
                assert_eq!(order(&got), order(&want), "corpus {corpus} base {base} query {qid}");
                for (g, w) in got.iter().zip(&want) {
                    assert!((g.1 - w.1).abs() <= 1e-9, "corpus {corpus} doc {}: {} vs {}", g.0, g.1, w.1);
                }
            }
        }
    }
}

#[test]
fn ranking_does_not_depend_on_the_base() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let bases = common::sample_bases(&mut rng, 24);
    for corpus in 0..50 {
        let (docs, queries) = common::random_corpus(&mut rng, 10, 15, 5);
        let index = build_index(&docs).unwrap();
        let reference = Scorer::new(&index, &WeightScheme::default());
        for &base in &bases {
            let scorer = Scorer::new(&index, &WeightScheme::new(base).unwrap());
            for (qid, tokens) in &queries {
                let a = reference.rank_tokens(*qid, tokens);
                let b = scorer.rank_tokens(*qid, tokens);
                assert_eq!(
                    a.doc_ids().collect::<Vec<_>>(),
                    b.doc_ids().collect::<Vec<_>>(),
                    "corpus {corpus} base {base}"
                );
                for (x, y) in a.entries.iter().zip(&b.entries) {
                    assert!((x.score - y.score).abs() <= 1e-9);
                }
            }
        }
    }
}

#[test]
fn scores_lie_in_unit_interval_for_bases_above_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let (docs, queries) = common::random_corpus(&mut rng, 10, 15, 5);
        let index = build_index(&docs).unwrap();
        let scorer = Scorer::new(&index, &WeightScheme::new(3.0).unwrap());
        for (qid, tokens) in &queries {
            for e in &scorer.rank_tokens(*qid, tokens).entries {
                assert!((-1e-12..=1.0 + 1e-12).contains(&e.score), "{}", e.score);
            }
        }
    }
}
