use super::{DescentError, FiniteSite, SetSheaf};

/// Largest set for which [`natural_isomorphism`] will search.
pub const ISO_SEARCH_LIMIT: usize = 8;

/// Finds components `θ_o: F(o) -> G(o)`, all bijective and commuting with
/// every restriction, or `None` if there are none.
///
/// Search is by element: fixing `θ_b(x) = y` forces `θ_a(F(f)x) = G(f)y`
/// for every `f: a -> b`, which is propagated before branching again.
pub fn natural_isomorphism(
    site: &FiniteSite,
    f: &SetSheaf,
    g: &SetSheaf,
) -> Result<Option<Vec<Vec<usize>>>, DescentError> {
    f.fits(site)?;
    g.fits(site)?;
    for o in 0..site.object_count() {
        for s in [f, g] {
            if s.len(o) > ISO_SEARCH_LIMIT {
                return Err(DescentError::TooLarge {
                    object: site.object_name(o).to_string(),
                    size: s.len(o),
                    limit: ISO_SEARCH_LIMIT,
                });
            }
        }
        if f.len(o) != g.len(o) {
            return Ok(None);
        }
    }
    let state = State {
        theta: (0..site.object_count())
            .map(|o| vec![None; f.len(o)])
            .collect(),
        used: (0..site.object_count())
            .map(|o| vec![false; g.len(o)])
            .collect(),
    };
    Ok(search(site, f, g, state).map(|s| {
        s.theta
            .into_iter()
            .map(|row| row.into_iter().map(|y| y.expect("complete")).collect())
            .collect()
    }))
}

#[derive(Clone)]
struct State {
    theta: Vec<Vec<Option<usize>>>,
    used: Vec<Vec<bool>>,
}

fn assign(
    site: &FiniteSite,
    f: &SetSheaf,
    g: &SetSheaf,
    state: &mut State,
    o: usize,
    x: usize,
    y: usize,
) -> bool {
    let mut work = vec![(o, x, y)];
    while let Some((o, x, y)) = work.pop() {
        match state.theta[o][x] {
            Some(prev) if prev == y => continue,
            Some(_) => return false,
            None => {}
        }
        if state.used[o][y] {
            return false;
        }
        state.theta[o][x] = Some(y);
        state.used[o][y] = true;
        for &h in site.arrows_into(o) {
            work.push((site.src(h), f.restrict(h, x), g.restrict(h, y)));
        }
    }
    true
}

fn search(site: &FiniteSite, f: &SetSheaf, g: &SetSheaf, state: State) -> Option<State> {
    let next = state
        .theta
        .iter()
        .enumerate()
        .find_map(|(o, row)| row.iter().position(Option::is_none).map(|x| (o, x)));
    let Some((o, x)) = next else {
        return Some(state);
    };
    for y in 0..g.len(o) {
        if state.used[o][y] {
            continue;
        }
        let mut trial = state.clone();
        if assign(site, f, g, &mut trial, o, x, y) {
            if let Some(done) = search(site, f, g, trial) {
                return Some(done);
            }
        }
    }
    None
}
