//! Community detection by maximizing performance: the fraction of node pairs
//! that a partition classifies correctly (adjacent pairs grouped together,
//! non-adjacent pairs kept apart).
//!
//! ```
//! use fpcomm::graph::{load_edge_list, LoadOptions};
//! use fpcomm::{fastfp, fp, fpgreed};
//!
//! let text = "0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n2 3\n";
//! let (g, _labels) = load_edge_list(text.as_bytes(), LoadOptions::default())?;
//! let (p, stats) = fpgreed::run(&g)?;
//! assert_eq!(p.community_count(), 2);
//! assert_eq!(stats.final_fp, fp(&g, &p)?);
//! let (q, _) = fastfp::run(&g, Default::default())?;
//! assert_eq!(q.community_count(), 2);
//! # Ok::<(), fpcomm::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod fastfp;
pub mod fpgreed;
pub mod graph;
pub mod oracle;
pub mod partition_file;
pub mod quality;
pub mod report;

pub use error::{Error, Result};
pub use graph::{Graph, LabelMap, LoadOptions, NodeId};
pub use quality::{fp, modularity, CommunityId, FpScore, Partition};
