from contextlib import contextmanager
import logging
from typing import Iterable

import pandas as pd

from complength import base
from complength.spark import spark_tools

logger = logging.getLogger(__name__)

class Runner():
    def __init__(self, input: base.BaseStage, jobs=None, driver_memory='4g', python_executable=None, keep_alive=False, spark_conf={}):
        self.input = input

        self.jobs = jobs
        self.driver_memory = driver_memory
        self.spark_conf = spark_conf
        self.python_executable = python_executable
        self.keep_alive = keep_alive
        self._spark_manager = None

    def get_obj(self):
        with self.start_and_process() as obj:
            return obj

    def _num_jobs(self):
        return self.jobs if self.jobs is not None else self.input._num_jobs()

    @contextmanager
    def start_and_process(self):
        if self._spark_manager or self._num_jobs() <= 1:
            # single job runs need no spark session
            yield self.input._process(self._spark_manager)
        else:
            spark_builder = self._get_spark_builder()
            with spark_builder.start_session() as spark_manager:
                res = self.input._process(spark_manager)
                yield res
                if self.keep_alive:
                    self._spark_manager = spark_manager

    def to_records(self):
        '''
        :return: List of JSON serialisable dicts, one per report plus any summary row
        '''
        with self.start_and_process() as res:
            return _records(res)

    def to_pandas(self):
        '''
        :return: Pandas dataframe of the records
        '''
        return pd.DataFrame.from_records(self.to_records())

    def run(self):
        with self.start_and_process():
            pass

    def set_spark_manager(self, spark_manager):
        self._spark_manager = spark_manager

    def get_spark_manager(self):
        return self._spark_manager

    def _get_spark_builder(self):
        spark_builder = spark_tools.SparkBuilder(num_jobs=self._num_jobs(), driver_memory=self.driver_memory,
                                                 python_executable=self.python_executable, keep_alive=self.keep_alive,
                                                 spark_conf=self.spark_conf)

        self.input._set_spark_options(spark_builder)

        return spark_builder


def _records(res):
    if hasattr(res, 'to_records'):
        return res.to_records()
    if hasattr(res, 'to_record'):
        return [res.to_record()]
    if isinstance(res, Iterable):
        return [element.to_record() if hasattr(element, 'to_record') else element for element in res]
    raise TypeError(f"cannot turn {type(res).__name__} into records")
