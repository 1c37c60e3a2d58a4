from .utils import Logger
from abc import ABC, abstractmethod

class Worker(Logger, ABC):
    """
    Base class of the long running jobs of qudio, such as the distributed trainer `Qudio` and the gradient `BiasChecker`.
    A worker is configured in its constructor, logs under its own name when verbose, and does its work in `run()`.
    Calling the worker runs it and returns the worker itself, so that results stay readable as attributes.
    """

    def __init__(self, name:str, verbose:bool = False):
        super().__init__(name, verbose)

    @abstractmethod
    def run(self, *args, **kwargs):
        """Runs the job on the inputs given at construction and stores the results on the worker"""
        pass

    def __call__(self, *args, **kwargs):
        self.run(*args, **kwargs)
        return self
