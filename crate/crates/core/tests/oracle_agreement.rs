use simplefold::all_layers::decide_all_layers_mixed;
use simplefold::characterize::decide_assigned;
use simplefold::envelope::{envelope, ASSIGNED, MIXED};
use simplefold::mixed_assign::find_valid_assignment;
use simplefold::oracle::{search_1d, FoldModel, SearchBudget};
use simplefold::CreasePattern1D;

fn oracle(p: &CreasePattern1D, model: FoldModel) -> bool {
    search_1d(p, model, SearchBudget::default())
        .unwrap()
        .is_foldable()
        .unwrap_or_else(|| panic!("budget exhausted on {p:?}"))
}

#[test]
fn assigned_decider_matches_one_and_some_layer_search() {
    for p in envelope(8, 5, &ASSIGNED, 0) {
        let expected = decide_assigned(&p).unwrap().is_foldable();
        assert_eq!(oracle(&p, FoldModel::OneLayer), expected, "one-layer {p:?}");
        assert_eq!(oracle(&p, FoldModel::SomeLayers), expected, "some-layers {p:?}");
    }
}

#[test]
fn all_layers_greedy_matches_search() {
    for p in envelope(8, 5, &MIXED, 3) {
        assert_eq!(oracle(&p, FoldModel::AllLayers), decide_all_layers_mixed(&p).is_foldable(), "{p:?}");
    }
}

#[test]
fn assignment_found_iff_some_completion_folds() {
    for p in envelope(8, 5, &MIXED, 3) {
        let found = find_valid_assignment(&p);
        if let Some(a) = &found {
            assert!(decide_assigned(&a.apply(&p)).unwrap().is_foldable(), "{p:?}");
        }
        let free: Vec<usize> = (0..p.num_creases()).filter(|&i| !p.creases()[i].mv.is_assigned()).collect();
        let any = (0u32..1 << free.len()).any(|mask| {
            let mut mvs: Vec<_> = p.creases().iter().map(|c| c.mv).collect();
            for (b, &i) in free.iter().enumerate() {
                mvs[i] = ASSIGNED[(mask >> b & 1) as usize];
            }
            decide_assigned(&p.with_assignments(&mvs)).unwrap().is_foldable()
        });
        assert_eq!(found.is_some(), any, "{p:?}");
    }
}
