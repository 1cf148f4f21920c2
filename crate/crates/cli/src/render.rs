use diagramrep::diagram::Partition;

/// Letter name of block `k`: `A`..`Z`, then `AA`, `AB`, ...
fn block_name(mut k: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'A' + (k % 26) as u8);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

/// Two-row picture: upper labels over block letters, then block letters
/// over lower labels. Vertices in the same block share a letter.
pub fn render(a: &Partition) -> String {
    let upper: Vec<(String, String)> = (1..=a.m())
        .map(|i| (i.to_string(), block_name(a.upper_label(i) as usize)))
        .collect();
    let lower: Vec<(String, String)> = (1..=a.n())
        .map(|j| (format!("{j}'"), block_name(a.lower_label(j) as usize)))
        .collect();
    let width = upper
        .iter()
        .chain(&lower)
        .map(|(l, b)| l.len().max(b.len()))
        .max()
        .unwrap_or(1);
    let row = |cells: &mut dyn Iterator<Item = &String>| -> String {
        let line: Vec<String> = cells.map(|c| format!("{c:>width$}")).collect();
        line.join(" ").trim_end().to_string()
    };
    let mut out = String::new();
    out.push_str(&row(&mut upper.iter().map(|(l, _)| l)));
    out.push('\n');
    out.push_str(&row(&mut upper.iter().map(|(_, b)| b)));
    out.push('\n');
    out.push_str(&row(&mut lower.iter().map(|(_, b)| b)));
    out.push('\n');
    out.push_str(&row(&mut lower.iter().map(|(l, _)| l)));
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_two() {
        let s = render(&Partition::identity(2));
        assert_eq!(s, " 1  2\n A  B\n A  B\n1' 2'\n");
    }

    #[test]
    fn h_one_two() {
        let h: Partition = "2,2:{1,2}{1',2'}".parse().unwrap();
        let s = render(&h);
        let lines: Vec<&str> = s.lines().map(str::trim).collect();
        assert_eq!(lines[1], "A  A");
        assert_eq!(lines[2], "B  B");
    }

    #[test]
    fn figure_one_a() {
        let a: Partition = "4,6:{1,4}{2,3,4',5'}{1',2',6'}{3'}".parse().unwrap();
        let s = render(&a);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(
            lines[1].split_whitespace().collect::<Vec<_>>(),
            ["A", "B", "B", "A"]
        );
        assert_eq!(
            lines[2].split_whitespace().collect::<Vec<_>>(),
            ["C", "C", "D", "B", "B", "C"]
        );
    }

    #[test]
    fn names() {
        assert_eq!(block_name(0), "A");
        assert_eq!(block_name(25), "Z");
        assert_eq!(block_name(26), "AA");
    }
}
