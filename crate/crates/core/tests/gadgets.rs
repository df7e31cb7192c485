use simplefold::fold_export::{poly_to_fold, rect_to_fold};
use simplefold::gadgets::{
    gen_3partition_assigned, gen_3partition_assigned_with, gen_3partition_unassigned, gen_3sat_rect,
    three_sat_layout, validate_polypattern, PolyPattern, ThreePartitionInstance, ThreePartitionOptions,
    ThreeSatFormula, ValidationFailure,
};
use simplefold::rect::Axis;
use simplefold::{Assignment, Rational};

fn instances() -> Vec<ThreePartitionInstance> {
    [vec![1, 1, 1], vec![1, 2, 3], vec![1, 2, 3, 1, 2, 3], vec![2, 2, 2, 1, 2, 3]]
        .into_iter()
        .map(|a| ThreePartitionInstance::new(a).unwrap())
        .collect()
}

fn both(inst: &ThreePartitionInstance) -> [PolyPattern; 2] {
    [gen_3partition_assigned(inst), gen_3partition_unassigned(inst)]
}

#[test]
fn partition_gadgets_validate_with_expected_counts() {
    for inst in instances() {
        for p in both(&inst) {
            let rep = validate_polypattern(&p);
            assert!(rep.is_ok(), "{:?}: {:?}", inst.numbers(), rep.failures);
            let wrapper = p.parts.get("wrapper").or_else(|| p.parts.get("cactus")).unwrap();
            assert_eq!(wrapper.creases, 2 * inst.m());
            let cage = &p.parts["cage"];
            assert_eq!(cage.steps, Some(2 * inst.m()));
            assert_eq!(cage.step_height, Some(Rational::from_int(2 * inst.t())));
            assert_eq!(p.parts["staircase"].segments, Some(inst.numbers().len()));
        }
    }
}

#[test]
fn generators_are_deterministic() {
    for inst in instances() {
        assert_eq!(both(&inst), both(&inst));
    }
    let f = ThreeSatFormula::new(2, vec![[1, -2, 2], [-1, -1, 2]]).unwrap();
    assert_eq!(gen_3sat_rect(&f), gen_3sat_rect(&f));
}

#[test]
fn unassigned_gadget_has_no_labels_and_a_branch_per_crease() {
    let inst = ThreePartitionInstance::new(vec![1, 2, 3, 1, 2, 3]).unwrap();
    let p = gen_3partition_unassigned(&inst);
    assert!(p.creases.iter().all(|c| c.mv == Assignment::Unassigned));
    let branches = p.parts.keys().filter(|k| k.starts_with("branch_")).count();
    assert_eq!(branches, p.parts["cactus"].creases);
    let q = gen_3partition_assigned(&inst);
    assert!(q.creases.iter().all(|c| c.mv.is_assigned()));
}

#[test]
fn dropping_the_second_arm_still_validates() {
    let inst = ThreePartitionInstance::new(vec![1, 1, 1]).unwrap();
    let opts = ThreePartitionOptions { arm2: false, ..Default::default() };
    let p = gen_3partition_assigned_with(&inst, opts);
    assert!(validate_polypattern(&p).is_ok());
    assert!(!p.parts.contains_key("arm2"));
    assert!(gen_3partition_assigned(&inst).parts.contains_key("arm2"));
}

#[test]
fn broken_polygons_fail_validation() {
    let inst = ThreePartitionInstance::new(vec![1, 2, 3]).unwrap();
    let p = gen_3partition_assigned(&inst);
    let fails = |q: &PolyPattern| validate_polypattern(q).failures;

    let mut q = p.clone();
    q.vertices.reverse();
    assert!(fails(&q).contains(&ValidationFailure::Clockwise));

    let mut q = p.clone();
    q.vertices.remove(1);
    assert!(fails(&q).iter().any(|f| matches!(f, ValidationFailure::NotOrthogonal { .. })));

    let mut q = p.clone();
    q.vertices.truncate(3);
    assert!(fails(&q).iter().any(|f| matches!(f, ValidationFailure::TooFewVertices(3))));

    let mut q = p.clone();
    q.creases[0].to = &q.creases[0].to + &Rational::from_int(500);
    assert!(fails(&q).iter().any(|f| matches!(f, ValidationFailure::CreaseOutside { crease: 0, .. })));

    let mut q = p.clone();
    q.parts.remove("column");
    assert!(fails(&q).contains(&ValidationFailure::MissingPart("column".into())));

    let mut q = p.clone();
    q.creases.pop();
    assert!(fails(&q).iter().any(|f| matches!(f, ValidationFailure::CountMismatch { .. })));
}

#[test]
fn partition_instances_are_checked() {
    assert!(ThreePartitionInstance::new(vec![]).is_err());
    assert!(ThreePartitionInstance::new(vec![1, 2]).is_err());
    assert!(ThreePartitionInstance::new(vec![0, 1, 2]).is_err());
    assert!(ThreePartitionInstance::new(vec![1, 1, 2]).is_err());
    assert_eq!(ThreePartitionInstance::new(vec![1, 2, 3, 1, 2, 3]).unwrap().t(), 4);
}

#[test]
fn three_sat_layout_places_one_pair_per_variable() {
    let f = ThreeSatFormula::new(3, vec![[1, -2, 3], [-1, 2, -3]]).unwrap();
    let lay = three_sat_layout(&f);
    assert_eq!(lay.false_lines.len(), 3);
    assert_eq!(lay.v_lines.len(), lay.v_prime_lines.len());
    assert_eq!(lay.occurrence_columns.len(), 6);
    for (f, t) in lay.false_lines.iter().zip(&lay.true_lines) {
        assert_eq!(t - f, 1);
    }
    let p = gen_3sat_rect(&f);
    let assigned_v: Vec<_> = p.creases().iter().filter(|c| c.axis == Axis::V && c.mv.is_assigned()).collect();
    // Full v/v' columns plus one segment per occurrence and per clause.
    assert_eq!(assigned_v.len(), 2 * lay.v_lines.len() * lay.height as usize + 6 + 2);
}

#[test]
fn fold_exports_label_every_edge() {
    let inst = ThreePartitionInstance::new(vec![1, 1, 1]).unwrap();
    let p = gen_3partition_unassigned(&inst);
    let fold = poly_to_fold(&p);
    let labels = fold["edges_assignment"].as_array().unwrap();
    assert_eq!(labels.len(), fold["edges_vertices"].as_array().unwrap().len());
    let boundary = labels.iter().filter(|l| *l == "B").count();
    assert!(boundary >= p.vertices.len());
    assert!(labels.iter().all(|l| ["B", "U"].contains(&l.as_str().unwrap())));

    let f = ThreeSatFormula::new(1, vec![[1, 1, 1]]).unwrap();
    let r = gen_3sat_rect(&f);
    let fold = rect_to_fold(&r);
    let lay = three_sat_layout(&f);
    let vertices = ((lay.width + 1) * (lay.height + 1)) as usize;
    assert_eq!(fold["vertices_coords"].as_array().unwrap().len(), vertices);
}
