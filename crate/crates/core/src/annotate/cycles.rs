use std::collections::VecDeque;

/// Strongly connected components (Tarjan, iterative). Components come out
/// in reverse topological order; members keep discovery order.
pub fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.reverse();
                comps.push(comp);
            }
        }
    }
    comps
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Period of the component `members` (gcd of all cycle lengths), computed
/// from BFS levels as the gcd of `|level(u) + 1 - level(v)|` over its edges.
/// Returns 0 for a component without edges.
pub fn component_period(adj: &[Vec<usize>], members: &[usize], comp_of: &[usize]) -> usize {
    let Some(&root) = members.first() else {
        return 0;
    };
    let cid = comp_of[root];
    let mut level = vec![usize::MAX; adj.len()];
    level[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if comp_of[v] == cid && level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut g = 0;
    for &u in members {
        for &v in &adj[u] {
            if comp_of[v] == cid {
                let slack = (level[u] as i64 + 1 - level[v] as i64).unsigned_abs() as usize;
                g = gcd(g, slack);
            }
        }
    }
    g
}

/// Shortest odd closed walk inside one component via BFS on the
/// `(vertex, parity)` product graph; it is always a simple cycle.
fn shortest_odd_cycle(
    adj: &[Vec<usize>],
    members: &[usize],
    comp_of: &[usize],
) -> Option<Vec<usize>> {
    let cid = comp_of[*members.first()?];
    let n = adj.len();
    let mut best: Option<Vec<usize>> = None;
    let mut dist = vec![usize::MAX; 2 * n];
    let mut parent = vec![usize::MAX; 2 * n];
    for &s in members {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        let start = 2 * s;
        let goal = 2 * s + 1;
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(state) = queue.pop_front() {
            if state == goal {
                break;
            }
            if let Some(b) = &best {
                if dist[state] + 1 >= b.len() {
                    break;
                }
            }
            let (u, par) = (state / 2, state % 2);
            for &v in &adj[u] {
                if comp_of[v] != cid {
                    continue;
                }
                let next = 2 * v + (1 - par);
                if dist[next] == usize::MAX {
                    dist[next] = dist[state] + 1;
                    parent[next] = state;
                    queue.push_back(next);
                }
            }
        }
        if dist[goal] == usize::MAX || best.as_ref().is_some_and(|b| dist[goal] >= b.len()) {
            continue;
        }
        let mut walk = Vec::with_capacity(dist[goal]);
        let mut state = goal;
        while state != start {
            state = parent[state];
            walk.push(state / 2);
        }
        walk.reverse();
        let done = walk.len() == 1;
        best = Some(walk);
        if done {
            break;
        }
    }
    best
}

/// One shortest odd cycle for every component with odd period. Vertices are
/// local indices; a returned walk `[v0, .., vk]` closes with `vk -> v0`.
pub fn odd_cycles(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let comps = strongly_connected_components(adj);
    let mut comp_of = vec![usize::MAX; adj.len()];
    for (c, members) in comps.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    let mut walks = Vec::new();
    for members in &comps {
        let mut sorted = members.clone();
        sorted.sort_unstable();
        if component_period(adj, &sorted, &comp_of) % 2 == 1 {
            if let Some(w) = shortest_odd_cycle(adj, &sorted, &comp_of) {
                walks.push(w);
            }
        }
    }
    walks.sort_by_key(|w| w.iter().copied().min());
    walks
}
