"""Writes the motion JSON v1 fixtures used by the golden transcripts.

Rotations use the 3-4-5 triangle (cos 0.8, sin 0.6) so every value is an
exact short decimal and the files round-trip without formatting drift.
"""
import json
import pathlib

JOINTS = ["pelvis", "left_hip", "right_hip", "spine1", "left_knee", "right_knee", "spine2",
          "left_ankle", "right_ankle", "spine3", "left_foot", "right_foot", "neck", "left_collar",
          "right_collar", "head", "left_shoulder", "right_shoulder", "left_elbow", "right_elbow",
          "left_wrist", "right_wrist"]
PARENTS = [-1, 0, 0, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 9, 9, 12, 13, 14, 16, 17, 18, 19]
OFFSETS = [[0.0, 0.0, 0.0], [0.06, -0.09, 0.0], [-0.06, -0.09, 0.0], [0.0, 0.11, -0.02],
           [0.0, -0.38, 0.0], [0.0, -0.38, 0.0], [0.0, 0.13, 0.0], [0.0, -0.4, -0.03],
           [0.0, -0.4, -0.03], [0.0, 0.06, 0.02], [0.0, -0.06, 0.12], [0.0, -0.06, 0.12],
           [0.0, 0.21, -0.03], [0.08, 0.11, -0.01], [-0.08, 0.11, -0.01], [0.0, 0.09, 0.05],
           [0.12, 0.04, 0.0], [-0.12, 0.04, 0.0], [0.26, 0.0, 0.0], [-0.26, 0.0, 0.0],
           [0.25, 0.0, 0.0], [-0.25, 0.0, 0.0]]
IDENTITY = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0]
ROT_Z = [0.8, 0.6, 0.0, -0.6, 0.8, 0.0]      # +36.87 deg about z
ROT_Z_NEG = [0.8, -0.6, 0.0, 0.6, 0.8, 0.0]  # -36.87 deg about z


def frame(i, frames):
    row = [0.05 * i, 0.9, 0.0]
    for j in range(len(JOINTS)):
        raised = (j == 16 and i % 2 == 1) or (j == 17 and i % 2 == 0)
        row += (ROT_Z if j == 16 else ROT_Z_NEG) if raised else IDENTITY
    return [round(v, 10) for v in row]


def motion(frames):
    return {"format_version": 1, "fps": 20, "joint_names": JOINTS, "parents": PARENTS,
            "rest_offsets": OFFSETS, "frames": [frame(i, frames) for i in range(frames)]}


if __name__ == "__main__":
    out = pathlib.Path(__file__).resolve().parents[1] / "fixtures" / "motion"
    out.mkdir(parents=True, exist_ok=True)
    (out / "pose_4f.json").write_text(json.dumps(motion(4), separators=(",", ":")) + "\n")
    bad = motion(2)
    bad["joint_names"] = JOINTS[:21]
    bad["parents"] = PARENTS[:21]
    bad["rest_offsets"] = OFFSETS[:21]
    bad["frames"] = [f[:3 + 21 * 6] for f in bad["frames"]]
    (out / "pose_21_joints.json").write_text(json.dumps(bad, separators=(",", ":")) + "\n")
