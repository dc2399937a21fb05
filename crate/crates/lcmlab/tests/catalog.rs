use std::fs;
use std::path::Path;

use lcmlab::catalog::{bundled_catalog_dir, load_catalog, load_catalog_filtered};
use lcmlab_core::iso::are_isomorphic;

const COUNTS: [(u32, usize); 12] = [
    (1, 1),
    (4, 2),
    (8, 5),
    (12, 5),
    (16, 14),
    (18, 5),
    (24, 15),
    (27, 5),
    (30, 4),
    (31, 1),
    (32, 51),
    (81, 15),
];

#[test]
fn bundled_counts_match_known_enumeration() {
    let cat = load_catalog(&bundled_catalog_dir()).unwrap();
    for (order, count) in COUNTS {
        let o = cat.get(order).unwrap();
        assert_eq!(o.entries.len(), count, "order {order}");
        assert!(cat.is_complete(order), "order {order}");
    }
    for order in 1..=32 {
        assert!(cat.is_complete(order), "order {order}");
    }
    assert!(!cat.is_complete(243));
    assert!(cat.warnings.is_empty());
}

#[test]
fn entries_of_one_order_are_pairwise_non_isomorphic() {
    let cat = load_catalog_filtered(&bundled_catalog_dir(), |o| o == 16 || o == 81 || o == 24).unwrap();
    for order in [16, 24, 81] {
        let entries = &cat.get(order).unwrap().entries;
        for (i, a) in entries.iter().enumerate() {
            for b in &entries[i + 1..] {
                assert!(
                    are_isomorphic(&a.group, &b.group).unwrap().is_none(),
                    "{} and {} are isomorphic",
                    a.id,
                    b.id
                );
            }
        }
    }
}

fn copy_order(dst: &Path, order: u32) {
    let from = bundled_catalog_dir().join(order.to_string());
    let to = dst.join(order.to_string());
    fs::create_dir_all(&to).unwrap();
    for e in fs::read_dir(from).unwrap() {
        let e = e.unwrap();
        fs::copy(e.path(), to.join(e.file_name())).unwrap();
    }
}

#[test]
fn duplicate_index_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    copy_order(dir.path(), 4);
    let d = dir.path().join("4");
    fs::copy(d.join("1.pc"), d.join("01.pc")).unwrap();
    fs::write(d.join("manifest"), "count 3\ncomplete yes\n").unwrap();
    let err = load_catalog(dir.path()).unwrap_err();
    assert!(err.to_string().contains("duplicate"), "{err}");
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn count_mismatch_and_wrong_order_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    copy_order(dir.path(), 8);
    fs::write(dir.path().join("8/manifest"), "count 6\ncomplete yes\n").unwrap();
    assert!(load_catalog(dir.path()).unwrap_err().to_string().contains("count"));

    let dir = tempfile::tempdir().unwrap();
    copy_order(dir.path(), 8);
    fs::copy(
        bundled_catalog_dir().join("4/1.pc"),
        dir.path().join("8/1.pc"),
    )
    .unwrap();
    assert!(load_catalog(dir.path()).unwrap_err().to_string().contains("order"));
}

#[test]
fn empty_catalog_warns() {
    let dir = tempfile::tempdir().unwrap();
    let cat = load_catalog(dir.path()).unwrap();
    assert_eq!(cat.orders.len(), 0);
    assert_eq!(cat.warnings.len(), 1);
}
