use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{Assignment, SpatialInstance};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct InstanceRow {
    role: String,
    position: f64,
    #[serde(default)]
    capacity: Option<u32>,
}

#[derive(Debug, Serialize)]
struct AssignmentRow {
    user_index: usize,
    user_pos: f64,
    server_index: Option<usize>,
    server_pos: Option<f64>,
    distance: Option<f64>,
}

/// Reads `role,position,capacity` rows. Rows may come in any order; users and
/// servers are sorted by position (stably), and a missing server capacity
/// means 1.
pub fn read_instance<R: Read>(reader: R) -> Result<SpatialInstance> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).comment(Some(b'#')).from_reader(reader);
    let mut users = Vec::new();
    let mut servers: Vec<(f64, u32)> = Vec::new();
    for (line, row) in rdr.deserialize::<InstanceRow>().enumerate() {
        let row = row?;
        match row.role.to_ascii_lowercase().as_str() {
            "user" => users.push(row.position),
            "server" => servers.push((row.position, row.capacity.unwrap_or(1))),
            other => {
                return Err(Error::Format(format!("row {}: unknown role {other:?}", line + 1)));
            }
        }
    }
    users.sort_by(f64::total_cmp);
    servers.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (pos, caps) = servers.into_iter().unzip();
    SpatialInstance::new(users, pos, caps).map_err(|e| Error::Format(e.to_string()))
}

pub fn write_instance<W: Write>(writer: W, inst: &SpatialInstance) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for &r in inst.users() {
        w.serialize(InstanceRow { role: "user".into(), position: r, capacity: None })?;
    }
    for (&s, &c) in inst.servers().iter().zip(inst.capacities()) {
        w.serialize(InstanceRow { role: "server".into(), position: s, capacity: Some(c) })?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `user_index,user_pos,server_index,server_pos,distance`; unmatched
/// users have empty server fields.
pub fn write_assignment<W: Write>(writer: W, inst: &SpatialInstance, a: &Assignment) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for (i, (m, d)) in a.matches.iter().zip(&a.distances).enumerate() {
        w.serialize(AssignmentRow {
            user_index: i,
            user_pos: inst.users()[i],
            server_index: *m,
            server_pos: m.map(|j| inst.servers()[j]),
            distance: *d,
        })?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policies::mtr;

    #[test]
    fn round_trip() {
        let inst = SpatialInstance::new(vec![0.5, 2.0], vec![1.0, 3.0], vec![2, 1]).unwrap();
        let mut buf = Vec::new();
        write_instance(&mut buf, &inst).unwrap();
        let back = read_instance(buf.as_slice()).unwrap();
        assert_eq!(back, inst);
    }

    #[test]
    fn unsorted_rows_and_default_capacity() {
        let text = "role,position,capacity\nserver,5,\nuser,3,\nserver,1,2\nuser,0.5,\n";
        let inst = read_instance(text.as_bytes()).unwrap();
        assert_eq!(inst.users(), &[0.5, 3.0]);
        assert_eq!(inst.servers(), &[1.0, 5.0]);
        assert_eq!(inst.capacities(), &[2, 1]);
    }

    #[test]
    fn malformed_rows() {
        assert!(read_instance("role,position,capacity\nclient,1,\n".as_bytes()).is_err());
        assert!(read_instance("role,position,capacity\nuser,abc,\n".as_bytes()).is_err());
        assert!(read_instance("role,position,capacity\nserver,1,0\n".as_bytes()).is_err());
    }

    #[test]
    fn assignment_csv() {
        let inst = SpatialInstance::with_capacity(vec![1.0, 5.0], vec![2.0], 1).unwrap();
        let mut buf = Vec::new();
        write_assignment(&mut buf, &inst, &mtr(&inst)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "user_index,user_pos,server_index,server_pos,distance\n0,1.0,0,2.0,1.0\n1,5.0,,,\n");
    }
}
