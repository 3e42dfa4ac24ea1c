//! `l_pair` uses a closed form. Here the same L-factor is assembled from the
//! Langlands parameters block by block, using only the single-factor tables.

use rankin_periods::characters::{char_mul, ArchCharacter};
use rankin_periods::corpus::{generate_corpus, SuiteConfig};
use rankin_periods::gamma::GammaProduct;
use rankin_periods::local_factors::{l_char, l_discrete, l_discrete_pair, l_pair};
use rankin_periods::weights::{infinitesimal, FieldKind, Weight};
use rankin_periods::HalfInt;

enum Block {
    Discrete(HalfInt, HalfInt),
    Character(ArchCharacter),
}

/// Real case: `D_{mu~_i, mu~_{n+1-i}}` for `i <= n/2`, plus `|.|^{w/2}` when
/// `n` is odd (its sign never enters a factor against a discrete block).
fn real_blocks(w: &Weight) -> Vec<Block> {
    let m = &infinitesimal(w)[0];
    let n = m.len();
    let mut out: Vec<Block> = (0..n / 2).map(|i| Block::Discrete(m[i], m[n - 1 - i])).collect();
    if n % 2 == 1 {
        out.push(Block::Character(ArchCharacter::real(m[n / 2], 0).unwrap()));
    }
    out
}

fn real_assembly(mu: &Weight, nu: &Weight) -> GammaProduct {
    let mut out = GammaProduct::one();
    for x in real_blocks(mu) {
        for y in real_blocks(nu) {
            out *= &match (&x, &y) {
                (Block::Discrete(a, b), Block::Discrete(c, d)) => l_discrete_pair(*a, *b, *c, *d).unwrap(),
                (Block::Discrete(a, b), Block::Character(c)) | (Block::Character(c), Block::Discrete(a, b)) => {
                    l_discrete(*a, *b, c).unwrap()
                }
                (Block::Character(c), Block::Character(d)) => l_char(&char_mul(c, d).unwrap()),
            };
        }
    }
    out
}

/// Complex case: characters `z^{mu~^iota_i} zbar^{mu~^iotabar_{n+1-i}}`.
fn complex_characters(w: &Weight) -> Vec<ArchCharacter> {
    let m = infinitesimal(w);
    let n = w.n();
    (0..n).map(|i| ArchCharacter::complex(m[0][i], m[1][n - 1 - i]).unwrap()).collect()
}

fn complex_assembly(mu: &Weight, nu: &Weight) -> GammaProduct {
    let mut out = GammaProduct::one();
    for x in complex_characters(mu) {
        for y in complex_characters(nu) {
            out *= &l_char(&char_mul(&x, &y).unwrap());
        }
    }
    out
}

fn assembly(mu: &Weight, nu: &Weight) -> GammaProduct {
    match mu.field() {
        FieldKind::Real => real_assembly(mu, nu),
        FieldKind::Complex => complex_assembly(mu, nu),
    }
}

#[test]
fn closed_form_matches_block_assembly_on_balanced_pairs() {
    let config = SuiteConfig { cases: 300, n_max: 4, seed: 17, ..SuiteConfig::default() };
    let cases = generate_corpus(&config).unwrap();
    for case in &cases {
        assert_eq!(l_pair(&case.mu, &case.nu).unwrap(), assembly(&case.mu, &case.nu), "{case:?}");
    }
    for n in 2..=4 {
        for field in [FieldKind::Real, FieldKind::Complex] {
            assert!(cases.iter().any(|c| c.mu.n() == n && c.field() == field));
        }
    }
}

#[test]
fn closed_form_needs_balance() {
    // mu = (0, 0, 0), nu = (5, -5): the interval is empty and the D x D block
    // contributes Gamma_C(s + 9/2) where the closed form has Gamma_C(s - 9/2)
    let mu = Weight::real(vec![0, 0, 0]).unwrap();
    let nu = Weight::real(vec![5, -5]).unwrap();
    assert_ne!(l_pair(&mu, &nu).unwrap(), assembly(&mu, &nu));
}

#[test]
fn interlacing_gaps_are_positive_on_corpus_pairs() {
    let cases = generate_corpus(&SuiteConfig::default()).unwrap();
    for case in &cases {
        let m = infinitesimal(&case.mu);
        let v = infinitesimal(&case.nu);
        let n = case.mu.n();
        let bar = m.len() - 1;
        for i in 1..=n {
            for k in 1..=n - i {
                let gap = m[0][i - 1] + v[0][k - 1] - m[bar][n - i] - v[bar][n - k - 1];
                assert!(gap > HalfInt::ZERO, "i = {i}, k = {k}, {case:?}");
            }
        }
    }
}
