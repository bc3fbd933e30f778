//! Evidence behind the reference fields that cannot be reproduced: each test
//! pins down what the exact computation gives instead.

use rotodo::golden::find;
use rotodo::maps::{Permutation, RotatedOdometer};
use rotodo::renorm::renormalize_once;

fn level1_matrix(f: &RotatedOdometer) -> Vec<Vec<i64>> {
    renormalize_once(f).unwrap().1.matrix().to_i64_rows()
}

fn all_permutations(q: usize) -> Vec<Permutation> {
    let mut v: Vec<usize> = (0..q).collect();
    let mut out = vec![Permutation::new(v.clone()).unwrap()];
    // Lexicographic successor.
    loop {
        let Some(i) = (0..q - 1).rev().find(|&i| v[i] < v[i + 1]) else { return out };
        let j = (i + 1..q).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(Permutation::new(v.clone()).unwrap());
    }
}

#[test]
fn cycle_04123_produces_the_matrix_listed_for_its_renormalized_relative() {
    let listed = find("5.12").unwrap();
    let f = RotatedOdometer::parse(5, "(04123)").unwrap();
    assert_eq!(level1_matrix(&f), listed.matrix);
    let (_, chi) = renormalize_once(&f).unwrap();
    let weights: Vec<i64> = chi.word_weights();
    assert_eq!(weights, listed.weights);

    let own = RotatedOdometer::parse(5, listed.perm).unwrap();
    assert_ne!(level1_matrix(&own), listed.matrix);
}

#[test]
fn no_permutation_of_five_symbols_produces_the_unreproducible_matrix() {
    let listed = find("5.11").unwrap();
    let perms = all_permutations(5);
    assert_eq!(perms.len(), 120);
    assert!(perms.into_iter().all(|p| level1_matrix(&RotatedOdometer::new(p)) != listed.matrix));
}

#[test]
fn listed_weights_of_the_second_table_contradict_its_matrix() {
    let listed = find("5.2").unwrap();
    let f = RotatedOdometer::parse(listed.q, listed.perm).unwrap();
    let (_, chi) = renormalize_once(&f).unwrap();
    assert_eq!(chi.matrix().to_i64_rows(), listed.matrix);
    let signs = chi.alphabet.signs();
    let implied: Vec<i64> = listed
        .matrix
        .iter()
        .map(|row| row.iter().zip(&signs).map(|(m, s)| m * s).sum())
        .collect();
    assert_eq!(implied, chi.word_weights());
    assert_ne!(implied, listed.weights);
}
