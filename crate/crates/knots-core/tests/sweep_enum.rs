/// All valid polygon words up to `max_len` letters, one per rotation class.
fn enumerate_cyclic_min_polygons(max_len: usize) -> Vec<Vec<u8>> {
    fn l1(p: (i32, i32, i32)) -> usize {
        (p.0.unsigned_abs() + p.1.unsigned_abs() + p.2.unsigned_abs()) as usize
    }
    fn step(d: u8) -> (i32, i32, i32) {
        [
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
            (0, 0, -1),
            (0, -1, 0),
            (-1, 0, 0),
        ][d as usize - 1]
    }
    fn is_cyclic_min(w: &[u8]) -> bool {
        let n = w.len();
        for k in 1..n {
            for i in 0..n {
                match w[(k + i) % n].cmp(&w[i]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }
    struct Dfs {
        max_len: usize,
        word: Vec<u8>,
        visited: BTreeSet<(i32, i32, i32)>,
        pos: (i32, i32, i32),
        out: Vec<Vec<u8>>,
    }
    impl Dfs {
        fn go(&mut self) {
            for d in 1..=6u8 {
                let (dx, dy, dz) = step(d);
                let next = (self.pos.0 + dx, self.pos.1 + dy, self.pos.2 + dz);
                let len_after = self.word.len() + 1;
                if next == (0, 0, 0) {
                    if len_after >= 4 {
                        self.word.push(d);
                        if is_cyclic_min(&self.word) {
                            self.out.push(self.word.clone());
                        }
                        self.word.pop();
                    }
                    continue;
                }
                if len_after >= self.max_len || self.visited.contains(&next) {
                    continue;
                }
                // must still be able to close in the remaining steps
                let remaining = self.max_len - len_after;
                if l1(next) > remaining {
                    continue;
                }
                self.word.push(d);
                self.visited.insert(next);
                let old = self.pos;
                self.pos = next;
                self.go();
                self.pos = old;
                self.visited.remove(&next);
                self.word.pop();
            }
        }
    }
    let mut dfs = Dfs {
        max_len,
        word: Vec::new(),
        visited: BTreeSet::from([(0, 0, 0)]),
        pos: (0, 0, 0),
        out: Vec::new(),
    };
    dfs.go();
    dfs.out
}
