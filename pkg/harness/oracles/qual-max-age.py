def water_age_stat(en):
    res = en.getComputedQualityTimeSeries()
    return max(max(row) for row in res.NodeQuality)

result = water_age_stat(en)
