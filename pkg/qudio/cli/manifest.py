from dataclasses import dataclass, field
import hashlib
import json
import os

from ..utils import file_digest

MANIFEST_FILENAME = "manifest.json"

@dataclass
class RunManifest:
    """
    Everything needed to re-run a command: the subcommand, its command line, the resolved configuration and a digest of every input file.
    Written next to the outputs of each run.

    Attributes:
        subcommand (str): name of the subcommand
        argv (list): the command line arguments after the program name
        config (dict): resolved configuration (GlobalConfig.to_dict() plus command specific options)
        inputs (dict): input file path -> sha256 digest
        outputs (list): paths of the files written by the run
    """
    subcommand : str
    argv : list
    config : dict = field(default_factory=dict)
    inputs : dict = field(default_factory=dict)
    outputs : list = field(default_factory=list)

    def add_input(self, filepath : str) -> None:
        self.inputs[os.path.abspath(filepath)] = file_digest(filepath)

    def add_output(self, filepath : str) -> None:
        self.outputs.append(os.path.abspath(filepath))

    @property
    def run_id(self) -> str:
        """Short hexadecimal id, stable for a given subcommand and configuration"""
        key = json.dumps({"subcommand" : self.subcommand, "config" : self.config}, sort_keys=True, default=str)
        return hashlib.sha1(key.encode("utf-8")).hexdigest()[:12]

    def to_dict(self) -> dict:
        return {
            "run_id" : self.run_id,
            "subcommand" : self.subcommand,
            "argv" : list(self.argv),
            "config" : self.config,
            "inputs" : self.inputs,
            "outputs" : self.outputs,
        }

    def save(self, directory : str) -> str:
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, MANIFEST_FILENAME)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2, default=str)
        return path

    @classmethod
    def load(cls, filepath : str) -> "RunManifest":
        with open(filepath, "r", encoding="utf-8") as f:
            d = json.load(f)
        return cls(d["subcommand"], d["argv"], d.get("config", {}), d.get("inputs", {}), d.get("outputs", []))

    def changed_inputs(self) -> list:
        """Inputs whose content differs from the recorded digest, or that disappeared"""
        return [path for path, digest in self.inputs.items() if not os.path.isfile(path) or file_digest(path) != digest]
