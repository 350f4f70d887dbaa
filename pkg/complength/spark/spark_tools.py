from contextlib import contextmanager
import logging
import os
import sys

try:
    from pyspark import SparkContext, SparkConf
    import pyspark.sql as psql
except ImportError:
    SparkContext = SparkConf = psql = None

logger = logging.getLogger(__name__)


def spark_available():
    return SparkContext is not None


class SparkBuilder():
    def __init__(self, num_jobs=2, name='complength_app', driver_memory='4g', python_executable=None, keep_alive=False, spark_conf={}):

        self.keep_alive = keep_alive
        self.num_jobs = num_jobs
        self.conf = {}
        # add user set spark conf
        self.conf.update(spark_conf.items())

        self.conf['spark.app.name'] = name

        # everything runs in the driver process on local[N]
        self.conf['spark.driver.cores'] = str(num_jobs)
        self.conf['spark.driver.memory'] = driver_memory
        self.conf['spark.default.parallelism'] = str(num_jobs)
        self.conf['spark.ui.showConsoleProgress'] = 'false'

        os.environ['PYSPARK_PYTHON'] = python_executable or sys.executable

    def set_conf(self, key, value):
        self.conf[key] = value

    @contextmanager
    def start_session(self):
        if not spark_available():
            raise RuntimeError('parallel scans need pyspark; install it or run with a single job')

        spark_manager = SparkManager(self.num_jobs, self.conf)
        try:
            yield spark_manager
        finally:
            if not self.keep_alive:
                spark_manager.stop()

class SparkManager():
    def __init__(self, num_jobs, conf):

        self.num_jobs = num_jobs
        self.conf = conf

        spark_conf = SparkConf()
        spark_conf.setAll(conf.items())
        sc = SparkContext.getOrCreate(conf=spark_conf.setMaster(f"local[{num_jobs}]"))
        logger.info('started local spark context with %d cores', num_jobs)

        self._spark_context = sc
        self._session = psql.SparkSession.builder.config(conf=sc.getConf()).getOrCreate()

    def get_spark_session(self):
        return self._session

    def get_spark_context(self):
        return self._spark_context

    def get_num_cpus(self):
        return self.num_jobs

    def map_ordered(self, func, items):
        '''
        func over items on the workers, results in input order.
        '''
        indexed = list(enumerate(items))
        if not indexed:
            return []
        rdd = self._spark_context.parallelize(indexed, numSlices=min(len(indexed), self.num_jobs * 4))
        results = rdd.map(lambda pair: (pair[0], func(pair[1]))).collect()
        return [result for _, result in sorted(results, key=lambda pair: pair[0])]

    def stop(self):
        self._spark_context.stop()
