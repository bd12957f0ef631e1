use std::collections::VecDeque;

const NONE: usize = usize::MAX;

/// Maximum-cardinality matching of a bipartite graph (Hopcroft-Karp).
///
/// `edges` holds `(left, right)` pairs with `left < left_count` and
/// `right < right_count`. Returns matched pairs sorted by left vertex.
pub fn bipartite_max_matching(
    left_count: usize,
    right_count: usize,
    edges: &[(usize, usize)],
) -> Vec<(usize, usize)> {
    let mut adj = vec![Vec::new(); left_count];
    for &(l, r) in edges {
        assert!(l < left_count && r < right_count, "edge ({l}, {r}) out of range");
        adj[l].push(r);
    }
    let mut match_left = vec![NONE; left_count];
    let mut match_right = vec![NONE; right_count];
    let mut dist = vec![0usize; left_count];

    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..left_count {
            if match_left[l] == NONE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = NONE;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let next = match_right[r];
                if next == NONE {
                    found = true;
                } else if dist[next] == NONE {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; left_count];
        for l in 0..left_count {
            if match_left[l] == NONE {
                augment(l, &adj, &mut match_left, &mut match_right, &mut dist, &mut it);
            }
        }
    }

    (0..left_count)
        .filter(|&l| match_left[l] != NONE)
        .map(|l| (l, match_left[l]))
        .collect()
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    match_left: &mut [usize],
    match_right: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    while it[l] < adj[l].len() {
        let r = adj[l][it[l]];
        it[l] += 1;
        let next = match_right[r];
        let ok = next == NONE
            || (dist[next] == dist[l] + 1 && augment(next, adj, match_left, match_right, dist, it));
        if ok {
            match_left[l] = r;
            match_right[r] = l;
            return true;
        }
    }
    dist[l] = NONE;
    false
}
