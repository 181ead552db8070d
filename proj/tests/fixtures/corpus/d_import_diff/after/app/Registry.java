package app;

import java.util.*;

public class Registry {
  private List<String> names;
  private Map<String, Integer> counts;
}
