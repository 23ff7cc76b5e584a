use cayley_embed::embed::{find_embedding, quadrangle_violation, row_cycle_species};
use cayley_embed::group::isomorphic;
use cayley_embed::pls::{canonical_form, fixtures, SpeciesKey};
use cayley_embed::screening::{
    class_of, psi, psi_formula, psi_with, ObstacleCertificate, PsiOptions, ScreeningError, Variant,
};
use cayley_embed::verify::groups_of_order_18;

const VARIANTS: [Variant; 3] = [Variant::Group, Variant::Abelian, Variant::Cyclic];

fn fixture_keys(names: &[&str]) -> Vec<SpeciesKey> {
    let f = fixtures();
    let mut keys: Vec<SpeciesKey> = names.iter().map(|n| canonical_form(&f[n].pls)).collect();
    keys.sort();
    keys
}

#[test]
fn order_18_has_three_obstacles() {
    let groups = groups_of_order_18();
    for i in 0..groups.len() {
        for j in i + 1..groups.len() {
            assert!(!isomorphic(&groups[i], &groups[j]), "{} ~ {}", groups[i].name(), groups[j].name());
        }
    }
    let r = psi_with(18, Variant::Group, &groups, &PsiOptions::default()).unwrap();
    assert_eq!(r.psi, 6);
    assert_eq!(r.obstacle_keys(), fixture_keys(&["order4", "quadcrit_a", "quadcrit_b"]));
}

#[test]
fn screening_does_not_change_results() {
    let plain = PsiOptions { screening: false };
    for n in 1..=8 {
        for v in VARIANTS {
            let fast = psi(n, v).unwrap();
            let slow = psi_with(n, v, &class_of(n, v).unwrap(), &plain).unwrap();
            assert_eq!(fast.psi, slow.psi, "n={n} {v}");
            assert_eq!(fast.obstacle_keys(), slow.obstacle_keys(), "n={n} {v}");
        }
    }
}

#[test]
fn obstacle_certificates_recheck() {
    for n in 1..=12 {
        for v in VARIANTS {
            let r = psi(n, v).unwrap();
            assert_eq!(r.psi, psi_formula(n, v));
            let groups = class_of(n, v).unwrap();
            for o in &r.obstacles {
                let p = o.species_key.decode();
                match &o.certificate {
                    ObstacleCertificate::Quadrangle { .. } => assert!(quadrangle_violation(&p)),
                    ObstacleCertificate::RowCycleDivisibility { cycle_length, n: m } => {
                        assert_eq!(row_cycle_species(&p), Some(*cycle_length));
                        assert_ne!(m % cycle_length, 0);
                    }
                    ObstacleCertificate::ExhaustedSearch { groups: searched } => {
                        assert_eq!(searched.len(), groups.len());
                    }
                }
                for g in &groups {
                    assert!(!find_embedding(&p, g).is_embeddable(), "n={n} {v} {}", g.name());
                }
            }
        }
    }
}

#[test]
fn size_statistics_add_up() {
    let r = psi(12, Variant::Group).unwrap();
    let species = [1, 2, 5, 18, 59, 306, 1861];
    for (size, s) in &r.size_stats {
        assert_eq!(s.species, species[size - 1]);
        assert_eq!(s.reduced + s.transversal_bound + s.searched, s.species);
        assert_eq!(s.found_by_search + s.not_embeddable, s.searched);
        assert_eq!(r.survivor_counts[size], s.searched);
    }
    assert_eq!(r.size_stats[&7].not_embeddable, 2);
    assert_eq!(r.size_stats[&7].searched, 50);
}

#[test]
fn class_errors() {
    assert_eq!(
        psi(17, Variant::Group).unwrap_err(),
        ScreeningError::IncompleteClass { n: 17, variant: Variant::Group }
    );
    assert!(matches!(
        psi_with(6, Variant::Abelian, &class_of(6, Variant::Group).unwrap(), &PsiOptions::default()),
        Err(ScreeningError::ClassMismatch(_))
    ));
    assert!(psi(64, Variant::Abelian).is_ok());
    assert!(psi(65, Variant::Abelian).is_err());
}
