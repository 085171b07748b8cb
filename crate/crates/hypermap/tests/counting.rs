//! Cross-checks between the two exhaustive plane counts: one over hypermaps
//! built from permutations, one over weighted hypermobiles.

use hypermap::counting::{count_plane, count_plane_by_mobiles, edges_of_plane_profile, CountSpec};

#[test]
fn plane_counts_agree_with_mobile_counts() {
    let cap = 3;
    for d in 1..=3usize {
        let max_size = 6 + d;
        let max_edges = (max_size + d) / 2;
        let by_maps = count_plane(d, CountSpec::new(3, cap));
        let by_mobiles = count_plane_by_mobiles(d, max_size, cap);
        let mut compared = 0;
        for (p, &n) in &by_maps {
            if edges_of_plane_profile(p) <= max_edges {
                assert_eq!(
                    by_mobiles.get(p).copied().unwrap_or(0),
                    n,
                    "d = {d}, profile {p:?}"
                );
                compared += 1;
            }
        }
        for (p, &n) in &by_mobiles {
            if edges_of_plane_profile(p) <= max_edges && p.grade() <= 3 {
                assert_eq!(
                    by_maps.get(p).copied().unwrap_or(0),
                    n,
                    "d = {d}, profile {p:?}"
                );
            }
        }
        assert!(compared >= 2, "d = {d}: only {compared} profiles compared");
    }
}
