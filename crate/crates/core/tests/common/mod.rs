//! Reference enumerators written without any solver code.
#![allow(dead_code)]

/// Every Latin square of order `n` whose first row is `0, 1, …, n−1`
/// (and, when `reduced`, whose first column is too). Rows are filled cell
/// by cell with the smallest unused symbol first.
pub fn latin_squares(n: usize, reduced: bool) -> Vec<Vec<Vec<usize>>> {
    let mut grid = vec![vec![usize::MAX; n]; n];
    let mut row_used = vec![vec![false; n]; n];
    let mut col_used = vec![vec![false; n]; n];
    for c in 0..n {
        grid[0][c] = c;
        row_used[0][c] = true;
        col_used[c][c] = true;
    }
    let mut out = Vec::new();
    fill(n, reduced, n, &mut grid, &mut row_used, &mut col_used, &mut out);
    out
}

fn fill(
    n: usize,
    reduced: bool,
    cell: usize,
    grid: &mut Vec<Vec<usize>>,
    row_used: &mut Vec<Vec<bool>>,
    col_used: &mut Vec<Vec<bool>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if cell == n * n {
        out.push(grid.clone());
        return;
    }
    let (r, c) = (cell / n, cell % n);
    for v in 0..n {
        if reduced && c == 0 && v != r {
            continue;
        }
        if row_used[r][v] || col_used[c][v] {
            continue;
        }
        grid[r][c] = v;
        row_used[r][v] = true;
        col_used[c][v] = true;
        fill(n, reduced, cell + 1, grid, row_used, col_used, out);
        row_used[r][v] = false;
        col_used[c][v] = false;
    }
    grid[r][c] = usize::MAX;
}

/// Loop tables of order `n` with identity 0: reduced Latin squares.
pub fn normalized_loops(n: usize) -> Vec<Vec<Vec<usize>>> {
    latin_squares(n, true)
}

/// `n!` permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    perms(n, &mut cur, &mut used, &mut out);
    out
}

fn perms(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for v in 0..n {
        if !used[v] {
            used[v] = true;
            cur.push(v);
            perms(n, cur, used, out);
            cur.pop();
            used[v] = false;
        }
    }
}

/// Exhaustive associativity check straight from the table.
pub fn table_is_associative(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
}

/// Exhaustive isomorphism test by trying every bijection fixing 0.
pub fn brute_isomorphic(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    permutations(n).into_iter().filter(|p| p[0] == 0).any(|p| {
        (0..n).all(|x| (0..n).all(|y| p[a[x][y]] == b[p[x]][p[y]]))
    })
}

/// Isomorphism classes of a list of tables, by brute force.
pub fn brute_class_count(tables: &[Vec<Vec<usize>>]) -> usize {
    let mut reps: Vec<&Vec<Vec<usize>>> = Vec::new();
    for t in tables {
        if !reps.iter().any(|r| brute_isomorphic(r, t)) {
            reps.push(t);
        }
    }
    reps.len()
}
